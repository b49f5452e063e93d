#include "qd/dense.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qd {

namespace {

const cplx kI(0, 1);

cplx omega_pow(int k) {
  double a = std::numbers::pi / 4 * mod8(k);
  return {std::cos(a), std::sin(a)};
}

std::vector<SiteId> sorted_unique(std::vector<SiteId> s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

std::vector<SiteId> merge_support(const std::vector<SiteId>& a, const std::vector<SiteId>& b) {
  std::vector<SiteId> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<size_t> positions(const std::vector<SiteId>& sub, const std::vector<SiteId>& support) {
  std::vector<size_t> pos;
  for (auto s : sub) {
    auto it = std::lower_bound(support.begin(), support.end(), s);
    if (it == support.end() || *it != s) throw std::logic_error("site outside dense support");
    pos.push_back(size_t(it - support.begin()));
  }
  return pos;
}

struct PauliMasks {
  uint64_t x = 0, z = 0;
  int e = 0;
};

PauliMasks masks(const PhasedPauli& p, const std::vector<SiteId>& support) {
  PauliMasks m;
  size_t n = support.size();
  m.e = p.phase();
  for (auto [code, l] : p.ops()) {
    auto pos = positions({SiteId::from_code(code)}, support)[0];
    uint64_t bit = uint64_t(1) << (n - 1 - pos);
    if (l & X) m.x |= bit;
    if (l & Z) m.z |= bit;
    if (l == Y) m.e += 2;
  }
  m.e = mod8(m.e);
  return m;
}

// M <- M * P
void right_mul_pauli(Mat& M, const PauliMasks& pm) {
  Mat out(M.rows(), M.cols());
  cplx w = omega_pow(pm.e);
  for (Eigen::Index j = 0; j < M.cols(); ++j) {
    uint64_t jj = uint64_t(j);
    // (M P)|j> = M P|j>, P|j> = w (-1)^{z.j} |j^x>
    double s = (std::popcount(pm.z & jj) & 1) ? -1.0 : 1.0;
    out.col(j) = (w * s) * M.col(Eigen::Index(jj ^ pm.x));
  }
  M = std::move(out);
}

}  // namespace

void check_cap(size_t n) {
  if (n > kDenseQubitCap) throw std::length_error("dense support exceeds the qubit cap");
  double bytes = std::pow(4.0, double(n)) * sizeof(cplx);
  if (bytes > 512.0 * 1024 * 1024) throw std::length_error("dense materialization exceeds memory budget");
}

DenseOp DenseOp::identity(std::vector<SiteId> support) {
  support = sorted_unique(std::move(support));
  check_cap(support.size());
  Eigen::Index d = Eigen::Index(1) << support.size();
  return {support, Mat::Identity(d, d)};
}

double DenseOp::unitarity_error() const {
  Mat e = m.adjoint() * m - Mat::Identity(m.rows(), m.cols());
  return e.cwiseAbs().maxCoeff();
}

Mat pauli_matrix(const PhasedPauli& p, const std::vector<SiteId>& support) {
  check_cap(support.size());
  Eigen::Index d = Eigen::Index(1) << support.size();
  Mat M = Mat::Identity(d, d);
  right_mul_pauli(M, masks(p, support));
  return M;
}

DenseOp materialize(const PhasedPauli& p, std::vector<SiteId> support) {
  if (support.empty()) support = p.support();
  support = sorted_unique(std::move(support));
  return {support, pauli_matrix(p, support)};
}

DenseOp materialize(const CliffordWord& w, std::vector<SiteId> support) {
  if (support.empty()) support = w.support();
  support = sorted_unique(std::move(support));
  DenseOp out = DenseOp::identity(support);
  out.m *= omega_pow(w.phase());
  const double r2 = 1.0 / std::sqrt(2.0);
  for (auto& f : w.factors()) {
    if (auto p = std::get_if<PhasedPauli>(&f)) {
      right_mul_pauli(out.m, masks(*p, support));
    } else {
      Mat mp = out.m;
      right_mul_pauli(mp, masks(std::get<QuarterRotation>(f).axis, support));
      out.m = r2 * (out.m + kI * mp);
    }
  }
  return out;
}

DenseOp pauli_exponential(double theta, const PhasedPauli& axis, std::vector<SiteId> support) {
  if (!axis.is_hermitian()) throw std::invalid_argument("exponential axis must be Hermitian");
  if (support.empty()) support = axis.support();
  support = sorted_unique(std::move(support));
  DenseOp out = DenseOp::identity(support);
  Mat p = pauli_matrix(axis, support);
  out.m = std::cos(theta) * out.m + (kI * std::sin(theta)) * p;
  return out;
}

DenseOp diagonal_op(std::vector<SiteId> support, const std::vector<cplx>& diag) {
  DenseOp out = DenseOp::identity(std::move(support));
  if (diag.size() != size_t(out.m.rows())) throw std::invalid_argument("diagonal size mismatch");
  for (size_t i = 0; i < diag.size(); ++i) out.m(Eigen::Index(i), Eigen::Index(i)) = diag[i];
  return out;
}

namespace {

struct GateBits {
  uint64_t mask = 0;
  std::vector<uint64_t> offs;  // basis offset of each gate index
};

GateBits gate_bits(size_t n, const std::vector<size_t>& qubit_index) {
  size_t k = qubit_index.size();
  GateBits gb;
  std::vector<uint64_t> bit(k);
  for (size_t t = 0; t < k; ++t) {
    bit[t] = uint64_t(1) << (n - 1 - qubit_index[t]);
    gb.mask |= bit[t];
  }
  gb.offs.resize(size_t(1) << k);
  for (size_t g = 0; g < gb.offs.size(); ++g)
    for (size_t t = 0; t < k; ++t)
      if (g & (size_t(1) << (k - 1 - t))) gb.offs[g] |= bit[t];
  return gb;
}

bool covers_in_order(size_t n, const std::vector<size_t>& qubit_index) {
  return qubit_index.size() == n && std::is_sorted(qubit_index.begin(), qubit_index.end());
}

}  // namespace

void apply_left(Mat& m, size_t n, const Mat& gate, const std::vector<size_t>& qubit_index) {
  if (covers_in_order(n, qubit_index)) {
    m = gate * m;
    return;
  }
  auto gb = gate_bits(n, qubit_index);
  size_t gd = gb.offs.size();
  std::vector<cplx> g(gd * gd), v(gd);
  for (size_t r = 0; r < gd; ++r)
    for (size_t c = 0; c < gd; ++c) g[r * gd + c] = gate(Eigen::Index(r), Eigen::Index(c));
  uint64_t dim = uint64_t(1) << n;
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    cplx* col = m.data() + c * m.rows();
    // Enumerates every index with the gate bits cleared.
    for (uint64_t b = 0; b < dim; b = ((b | gb.mask) + 1) & ~gb.mask) {
      for (size_t t = 0; t < gd; ++t) v[t] = col[b | gb.offs[t]];
      for (size_t r = 0; r < gd; ++r) {
        cplx acc = 0;
        const cplx* row = &g[r * gd];
        for (size_t t = 0; t < gd; ++t) acc += row[t] * v[t];
        col[b | gb.offs[r]] = acc;
      }
    }
  }
}

void apply_right(Mat& m, size_t n, const Mat& gate, const std::vector<size_t>& qubit_index) {
  if (covers_in_order(n, qubit_index)) {
    m = m * gate;
    return;
  }
  auto gb = gate_bits(n, qubit_index);
  size_t gd = gb.offs.size();
  Mat in(m.rows(), Eigen::Index(gd)), out(m.rows(), Eigen::Index(gd));
  uint64_t dim = uint64_t(1) << n;
  for (uint64_t b = 0; b < dim; b = ((b | gb.mask) + 1) & ~gb.mask) {
    for (size_t t = 0; t < gd; ++t) in.col(Eigen::Index(t)) = m.col(Eigen::Index(b | gb.offs[t]));
    out.noalias() = in * gate;
    for (size_t t = 0; t < gd; ++t) m.col(Eigen::Index(b | gb.offs[t])) = out.col(Eigen::Index(t));
  }
}

DenseOp embed(const DenseOp& a, const std::vector<SiteId>& support_in) {
  auto support = sorted_unique(support_in);
  if (support == a.support) return a;
  auto pos = positions(a.support, support);
  size_t n = support.size(), k = pos.size();
  check_cap(n);
  uint64_t mask = 0;
  std::vector<uint64_t> expand(size_t(1) << k, 0);
  for (size_t t = 0; t < k; ++t) mask |= uint64_t(1) << (n - 1 - pos[t]);
  for (size_t sub = 0; sub < expand.size(); ++sub)
    for (size_t t = 0; t < k; ++t)
      if (sub & (size_t(1) << (k - 1 - t))) expand[sub] |= uint64_t(1) << (n - 1 - pos[t]);
  Eigen::Index d = Eigen::Index(1) << n;
  DenseOp out{support, Mat::Zero(d, d)};
  uint64_t dim = uint64_t(1) << n;
  for (uint64_t o = 0; o < dim; o = ((o | mask) + 1) & ~mask)
    for (size_t j = 0; j < expand.size(); ++j)
      for (size_t i = 0; i < expand.size(); ++i)
        out.m(Eigen::Index(o | expand[i]), Eigen::Index(o | expand[j])) = a.m(Eigen::Index(i), Eigen::Index(j));
  return out;
}

DenseOp multiply(const DenseOp& a, const DenseOp& b) {
  auto s = merge_support(a.support, b.support);
  check_cap(s.size());
  if (a.qubits() == s.size() && b.qubits() == s.size()) return {s, a.m * b.m};
  if (a.qubits() <= b.qubits()) {
    DenseOp r = embed(b, s);
    apply_left(r.m, s.size(), a.m, positions(a.support, s));
    return r;
  }
  DenseOp r = embed(a, s);
  apply_right(r.m, s.size(), b.m, positions(b.support, s));
  return r;
}

DenseOp conj_dense(const DenseOp& u, const DenseOp& a) {
  auto s = merge_support(u.support, a.support);
  check_cap(s.size());
  DenseOp r = embed(a, s);
  auto pos = positions(u.support, s);
  apply_left(r.m, s.size(), u.m, pos);
  apply_right(r.m, s.size(), u.m.adjoint(), pos);
  return r;
}

double max_deviation(const DenseOp& a, const DenseOp& b) {
  auto s = merge_support(a.support, b.support);
  DenseOp ea = embed(a, s), eb = embed(b, s);
  return (ea.m - eb.m).cwiseAbs().maxCoeff();
}

bool equal_dense(const DenseOp& a, const DenseOp& b, bool up_to_phase, double tol) {
  auto s = merge_support(a.support, b.support);
  DenseOp ea = embed(a, s), eb = embed(b, s);
  if (!up_to_phase) return (ea.m - eb.m).cwiseAbs().maxCoeff() <= tol;
  for (Eigen::Index j = 0; j < ea.m.cols(); ++j)
    for (Eigen::Index i = 0; i < ea.m.rows(); ++i) {
      if (std::abs(ea.m(i, j)) > tol) {
        if (std::abs(eb.m(i, j)) <= tol) return false;
        cplx ratio = eb.m(i, j) / ea.m(i, j);
        ratio /= std::abs(ratio);
        return (ea.m * ratio - eb.m).cwiseAbs().maxCoeff() <= tol;
      }
    }
  return eb.m.cwiseAbs().maxCoeff() <= tol;
}

DenseOp reduce_support(const DenseOp& a, double tol) { return reduce_support(a, a.support, tol); }

DenseOp reduce_support(const DenseOp& a, const std::vector<SiteId>& candidates, double tol) {
  size_t n = a.qubits();
  std::vector<SiteId> keep;
  std::vector<size_t> keep_pos, drop_pos;
  Eigen::Index dim = a.m.rows();
  for (size_t j = 0; j < n; ++j) {
    if (!std::binary_search(candidates.begin(), candidates.end(), a.support[j])) {
      keep.push_back(a.support[j]);
      keep_pos.push_back(j);
      continue;
    }
    // Commutes with X_j: A(i^b, k) = A(i, k^b); with Z_j: A(i, k) = 0 unless bit b agrees.
    Eigen::Index b = Eigen::Index(1) << (n - 1 - j);
    const double tol2 = tol * tol;
    bool trivial = true;
    for (Eigen::Index k = 0; k < dim && trivial; ++k)
      for (Eigen::Index i = 0; i < dim; ++i) {
        if (((i ^ k) & b) && std::norm(a.m(i, k)) > tol2) { trivial = false; break; }
        if (std::norm(a.m(i ^ b, k) - a.m(i, k ^ b)) > tol2) { trivial = false; break; }
      }
    if (trivial) drop_pos.push_back(j);
    else {
      keep.push_back(a.support[j]);
      keep_pos.push_back(j);
    }
  }
  if (drop_pos.empty()) return a;
  size_t nk = keep.size();
  Eigen::Index dk = Eigen::Index(1) << nk;
  Mat r = Mat::Zero(dk, dk);
  auto spread = [&](const std::vector<size_t>& pos) {
    size_t k = pos.size();
    std::vector<Eigen::Index> idx(size_t(1) << k, 0);
    for (size_t v = 0; v < idx.size(); ++v)
      for (size_t t = 0; t < k; ++t)
        if (v & (size_t(1) << (k - 1 - t))) idx[v] |= Eigen::Index(1) << (n - 1 - pos[t]);
    return idx;
  };
  auto ki = spread(keep_pos), di = spread(drop_pos);
  for (Eigen::Index j = 0; j < dk; ++j)
    for (Eigen::Index i = 0; i < dk; ++i) {
      cplx s = 0;
      for (auto t : di) s += a.m(ki[size_t(i)] | t, ki[size_t(j)] | t);
      r(i, j) = s / double(di.size());
    }
  return {keep, r};
}

DenseOp levin_gu_triangle(const std::array<SiteId, 3>& tri, double theta) {
  std::vector<SiteId> s(tri.begin(), tri.end());
  s = sorted_unique(s);
  if (s.size() != 3) throw std::invalid_argument("triangle needs three distinct sites");
  std::vector<cplx> d(8);
  for (int b = 0; b < 8; ++b) {
    int z1 = (b & 4) ? -1 : 1, z2 = (b & 2) ? -1 : 1, z3 = (b & 1) ? -1 : 1;
    double a = theta * (3 * z1 * z2 * z3 - z1 - z2 - z3);
    d[size_t(b)] = {std::cos(a), std::sin(a)};
  }
  return diagonal_op(s, d);
}

DenseOp set_edge_gate(SiteId e, SiteId d0, SiteId d1) {
  const double t = std::numbers::pi / 8;
  std::vector<SiteId> s{e, d0, d1};
  auto z0 = PhasedPauli::single(d0, Z), z1 = PhasedPauli::single(d1, Z);
  auto xe = PhasedPauli::single(e, X);
  DenseOp u = pauli_exponential(t, z1, s);
  u = multiply(u, pauli_exponential(-t, z0, s));
  u = multiply(u, pauli_exponential(-t, xe * z1, s));
  u = multiply(u, pauli_exponential(t, xe * z0, s));
  return u;
}

std::string dump(const DenseOp& a) {
  std::ostringstream os;
  os << "support";
  for (auto s : a.support) os << ' ' << s.str();
  os << "\nrows " << a.m.rows() << " cols " << a.m.cols() << '\n';
  os << std::setprecision(17);
  for (Eigen::Index i = 0; i < a.m.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.m.cols(); ++j)
      os << (j ? " " : "") << a.m(i, j).real() << ' ' << a.m(i, j).imag();
    os << '\n';
  }
  return os.str();
}

}  // namespace qd
