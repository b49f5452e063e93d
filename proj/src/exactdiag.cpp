#include "qd/exactdiag.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>

namespace qd {

namespace {

const cplx kI(0, 1);

std::vector<SiteId> sorted_unique(std::vector<SiteId> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

size_t position(SiteId s, const std::vector<SiteId>& support) {
  auto it = std::lower_bound(support.begin(), support.end(), s);
  if (it == support.end() || *it != s) throw std::invalid_argument("operator acts on " + s.str() + " outside the support");
  return size_t(it - support.begin());
}

cplx omega_pow(int k) {
  static const double r = std::sqrt(0.5);
  static const cplx w[8] = {{1, 0}, {r, r}, {0, 1}, {-r, r}, {-1, 0}, {-r, -r}, {0, -1}, {r, -r}};
  return w[mod8(k)];
}

// states <- P states
void left_mul_pauli(Mat& states, const PhasedPauli& p, const std::vector<SiteId>& support) {
  size_t n = support.size();
  uint64_t x = 0, z = 0;
  int e = p.phase();
  for (auto [code, l] : p.ops()) {
    uint64_t bit = uint64_t(1) << (n - 1 - position(SiteId::from_code(code), support));
    if (l & X) x |= bit;
    if (l & Z) z |= bit;
    if (l == Y) e += 2;
  }
  cplx w = omega_pow(e);
  Mat out(states.rows(), states.cols());
  for (Eigen::Index j = 0; j < states.rows(); ++j) {
    uint64_t jj = uint64_t(j);
    double s = (std::popcount(z & jj) & 1) ? -1.0 : 1.0;
    out.row(Eigen::Index(jj ^ x)) = (w * s) * states.row(j);
  }
  states = std::move(out);
}

}  // namespace

std::vector<SiteId> operator_support(const Operator& o) {
  if (auto w = std::get_if<CliffordWord>(&o)) return w->support();
  return std::get<DenseOp>(o).support;
}

void apply_operator(const Operator& o, Mat& states, const std::vector<SiteId>& support) {
  if (auto d = std::get_if<DenseOp>(&o)) {
    std::vector<size_t> idx;
    for (auto s : d->support) idx.push_back(position(s, support));
    apply_left(states, support.size(), d->m, idx);
    return;
  }
  auto& w = std::get<CliffordWord>(o);
  const double r2 = std::sqrt(0.5);
  auto& fs = w.factors();
  for (auto it = fs.rbegin(); it != fs.rend(); ++it) {
    if (auto p = std::get_if<PhasedPauli>(&*it)) {
      left_mul_pauli(states, *p, support);
    } else {
      Mat ps = states;
      left_mul_pauli(ps, std::get<QuarterRotation>(*it).axis, support);
      states = r2 * (states + kI * ps);
    }
  }
  states *= omega_pow(w.phase());
}

GroundSpace ground_space_of(const std::vector<Operator>& terms, std::vector<SiteId> support, uint64_t seed) {
  support = sorted_unique(std::move(support));
  size_t n = support.size();
  check_cap(n);
  Eigen::Index dim = Eigen::Index(1) << n;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  GroundSpace gs;
  gs.support = support;
  for (Eigen::Index m = std::min<Eigen::Index>(dim, 16);; m = std::min(dim, 4 * m)) {
    Mat v(dim, m);
    for (Eigen::Index c = 0; c < m; ++c)
      for (Eigen::Index r = 0; r < dim; ++r) v(r, c) = cplx(gauss(rng), gauss(rng));
    for (auto& t : terms) {
      Mat tv = v;
      apply_operator(t, tv, support);
      v = 0.5 * (v + tv);
    }
    Eigen::ColPivHouseholderQR<Mat> qr(v);
    qr.setThreshold(1e-10);
    auto rank = qr.rank();
    if (rank < m || m == dim) {
      gs.basis = qr.householderQ() * Mat::Identity(dim, rank);
      gs.dimension = size_t(rank);
      break;
    }
  }
  for (auto& t : terms) {
    Mat tb = gs.basis;
    apply_operator(t, tb, support);
    if (gs.dimension) gs.residual = std::max(gs.residual, (tb - gs.basis).cwiseAbs().maxCoeff());
  }
  return gs;
}

std::string topology_name(const Lattice& lat) {
  auto& t = lat.topology();
  std::string s = std::to_string(t.w) + "x" + std::to_string(t.h);
  if (lat.is_torus()) return s + " torus";
  return s + " window at (" + std::to_string(t.x0) + "," + std::to_string(t.y0) + ")";
}

GroundSpace ground_space(ModelId m, const Lattice& lat, uint64_t seed) {
  std::vector<Operator> terms;
  for (auto& t : hamiltonian_terms(m, lat)) terms.emplace_back(t.word);
  auto gs = ground_space_of(terms, lat.qubits(), seed);
  gs.model = model_name(m);
  gs.topology = topology_name(lat);
  return gs;
}

GroundSpace conjugated_ground_space(ModelId m, const Lattice& lat, const Circuit& c, uint64_t seed) {
  std::vector<Operator> terms;
  for (auto& t : hamiltonian_terms(m, lat)) {
    OpImage a;
    a.dense = true;
    a.op = materialize(t.word);
    terms.emplace_back(conjugate(c, a).to_dense());
  }
  auto gs = ground_space_of(terms, lat.qubits(), seed);
  gs.model = model_name(m) + " conjugated";
  gs.topology = topology_name(lat);
  return gs;
}

GroundSpace entangled_product_ground_space(const Lattice& lat, const Circuit& c, uint64_t seed) {
  auto inv = c.inverse();
  std::vector<Operator> terms;
  for (auto v : lat.vertices()) terms.emplace_back(conjugate(inv, PhasedPauli::single(v, X)).to_dense());
  auto gs = ground_space_of(terms, lat.qubits(), seed);
  gs.model = "entangled product";
  gs.topology = topology_name(lat);
  return gs;
}

cplx expectation(const GroundSpace& gs, const Operator& o) {
  if (gs.dimension == 0) throw std::invalid_argument("empty ground space");
  Mat ob = gs.basis;
  apply_operator(o, ob, gs.support);
  return (gs.basis.adjoint() * ob).trace() / double(gs.dimension);
}

}  // namespace qd
