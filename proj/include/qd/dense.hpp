#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "qd/pauli.hpp"

namespace qd {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;

constexpr size_t kDenseQubitCap = 14;
constexpr double kDenseTol = 1e-9;

// Operator on an ordered (sorted) support; site j of the support is bit
// (n-1-j) of the basis index, i.e. Kronecker order.
struct DenseOp {
  std::vector<SiteId> support;
  Mat m;

  size_t qubits() const { return support.size(); }
  static DenseOp identity(std::vector<SiteId> support);
  DenseOp adjoint() const { return {support, m.adjoint()}; }
  double unitarity_error() const;
};

void check_cap(size_t n);

Mat pauli_matrix(const PhasedPauli& p, const std::vector<SiteId>& support);
DenseOp materialize(const CliffordWord& w, std::vector<SiteId> support = {});
DenseOp materialize(const PhasedPauli& p, std::vector<SiteId> support = {});
// e^{i theta P} = cos(theta) + i sin(theta) P
DenseOp pauli_exponential(double theta, const PhasedPauli& axis, std::vector<SiteId> support = {});
DenseOp diagonal_op(std::vector<SiteId> support, const std::vector<cplx>& diag);

DenseOp embed(const DenseOp& a, const std::vector<SiteId>& support);
DenseOp multiply(const DenseOp& a, const DenseOp& b);
DenseOp conj_dense(const DenseOp& u, const DenseOp& a);  // U A U^dagger
bool equal_dense(const DenseOp& a, const DenseOp& b, bool up_to_phase, double tol = kDenseTol);
double max_deviation(const DenseOp& a, const DenseOp& b);

// Smallest support on which the operator acts nontrivially, with the reduced matrix.
DenseOp reduce_support(const DenseOp& a, double tol = kDenseTol);
// Only the sorted candidate sites may be dropped.
DenseOp reduce_support(const DenseOp& a, const std::vector<SiteId>& candidates, double tol = kDenseTol);

// Left-multiplies M (on n qubits) by a k-qubit gate acting on the listed bit positions.
void apply_left(Mat& m, size_t n, const Mat& gate, const std::vector<size_t>& qubit_index);
// Right-multiplies M by the gate.
void apply_right(Mat& m, size_t n, const Mat& gate, const std::vector<size_t>& qubit_index);

// Levin-Gu triangle gate e^{i theta (3 ZZZ - Z - Z - Z)} (diagonal).
DenseOp levin_gu_triangle(const std::array<SiteId, 3>& tri, double theta);
// SET edge gate i^{(1 - X_e)(Z_{d1} - Z_{d0})/4} on (edge, d0, d1).
DenseOp set_edge_gate(SiteId e, SiteId d0, SiteId d1);

std::string dump(const DenseOp& a);

}  // namespace qd
