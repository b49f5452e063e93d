#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qd/dense.hpp"
#include "qd/lattice.hpp"
#include "qd/pauli.hpp"

namespace qd {

// A gate is either a symbolic Clifford word or a dense unitary given as a
// product of pairwise commuting atoms (so only atoms touching an operator's
// support need to be applied when conjugating it).
struct Gate {
  std::vector<SiteId> support;
  std::optional<CliffordWord> word;
  std::vector<DenseOp> atoms;

  static Gate symbolic(CliffordWord w);
  static Gate dense(std::vector<DenseOp> commuting_atoms);
  bool is_symbolic() const { return word.has_value(); }
  DenseOp to_dense() const;
  Gate inverse() const;
};

struct Layer {
  std::vector<Gate> gates;
};

// U = L_D ... L_1: layer 1 acts first on states, so Ad(U) = Ad(L_D) o ... o Ad(L_1).
class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(std::vector<Layer> layers);

  const std::vector<Layer>& layers() const { return layers_; }
  size_t depth() const { return layers_.size(); }
  // Largest gate support size.
  size_t max_gate_size() const;
  std::vector<SiteId> support() const;
  bool is_symbolic() const;
  size_t gate_count() const;
  Circuit inverse() const;

 private:
  std::vector<Layer> layers_;
};

// Image of an operator under conjugation: symbolic when every gate touching the
// light cone is symbolic, dense otherwise.
struct OpImage {
  bool dense = false;
  PhasedPauli pauli;
  DenseOp op;
  std::vector<SiteId> support() const;
  DenseOp to_dense(const std::vector<SiteId>& sup = {}) const;
};

OpImage conjugate(const Circuit& c, const PhasedPauli& q);
OpImage conjugate(const Circuit& c, const OpImage& a);
bool same_image(const OpImage& a, const OpImage& b, double tol = kDenseTol);

int spread_bound(const Circuit& c);

struct SpreadReport {
  int bound = 0;
  int empirical = 0;
  size_t generators = 0;
};
// Largest distance from a generator's site to the support of its image, over
// X_s and Z_s for every qubit s at boundary distance >= margin.
SpreadReport empirical_spread(const Circuit& c, const Lattice& lat, int margin);

// Circuit partition from the constructive quasi-factorization proof:
// c = Xi o (alpha_in (x) alpha_out) with alpha_in inside `in`, alpha_out inside
// `out`, and Xi made of the gates that straddle.
struct Factorization {
  Circuit xi;
  Circuit alpha_in;
  Circuit alpha_out;
  Circuit recomposed() const;  // layers of alpha_in/alpha_out followed by xi
  int width = 0;  // gate diameter used for the shrinking regions
};

// Sites in neither region form the tie band; gates touching it go to Xi.
Factorization partition_circuit(const Circuit& c, const Lattice& lat, const std::set<SiteId>& in,
                                const std::set<SiteId>& out);

Factorization quasi_factorize(const Circuit& c, const Lattice& lat, const Region& cone, int margin);

// Strip splitting at the horizontal line y = cut - 0.5 (site positions are
// edge midpoints); up = strictly above, down = strictly below.
Factorization split_strip(const Circuit& c, const Lattice& lat, int cut);

struct RecompositionReport {
  size_t generators = 0;
  size_t failures = 0;
  std::vector<std::string> failed;
  bool ok() const { return failures == 0; }
};
RecompositionReport check_recomposition(const Circuit& c, const Factorization& f, const Lattice& lat,
                                        int margin);

// Support audit: Xi inside the band of width depth*width around the cut/cone
// boundary, alpha_in inside `in`, alpha_out inside `out`.
bool audit_supports(const Factorization& f, const Lattice& lat, const std::set<SiteId>& in,
                    const std::set<SiteId>& out);

// Text descriptor:
//   # comment
//   layer
//   gate <factor> [<factor> ...]
// factors: rot:<pauli>, pauli:<pauli>, exp:<p>/<q>:<pauli>  (e^{i pi p/q P}).
Circuit parse_circuit(const std::string& text);

}  // namespace qd
