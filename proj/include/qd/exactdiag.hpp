#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "qd/dense.hpp"
#include "qd/models.hpp"
#include "qd/qca.hpp"

namespace qd {

// A Hamiltonian term or observable: symbolic word or dense local operator.
using Operator = std::variant<CliffordWord, DenseOp>;

std::vector<SiteId> operator_support(const Operator& o);

// Left-multiplies the columns of `states` (vectors on `support`) by o.
void apply_operator(const Operator& o, Mat& states, const std::vector<SiteId>& support);

// Common +1 eigenspace of a commuting family, stored as an orthonormal basis.
struct GroundSpace {
  std::string model;
  std::string topology;
  std::vector<SiteId> support;
  Mat basis;  // 2^n x dimension
  size_t dimension = 0;
  double residual = 0;  // max |T B - B| over the terms

  Mat projector() const { return basis * basis.adjoint(); }
};

// Projects random vectors with prod (1 + T)/2 and takes the rank; the sample
// grows until the rank is below the sample size or spans the space.
GroundSpace ground_space_of(const std::vector<Operator>& terms, std::vector<SiteId> support,
                            uint64_t seed = 1);

// Terms of hamiltonian_terms(m, lat); throws above kDenseQubitCap qubits.
GroundSpace ground_space(ModelId m, const Lattice& lat, uint64_t seed = 1);

// Ground space of Ad(c) applied to every term of m.
GroundSpace conjugated_ground_space(ModelId m, const Lattice& lat, const Circuit& c, uint64_t seed = 1);

// Ground space of the terms c^* X_v c, v in the window: the entangled model with
// boundary terms completed by the truncated circuit.
GroundSpace entangled_product_ground_space(const Lattice& lat, const Circuit& c, uint64_t seed = 1);

// tr(P O)/tr(P); throws if o acts outside the ground-space support.
cplx expectation(const GroundSpace& gs, const Operator& o);

std::string topology_name(const Lattice& lat);

}  // namespace qd
