#include "qd/stabilizer.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace qd {

double Amplitude::magnitude() const { return zero ? 0.0 : std::pow(2.0, -r / 2.0); }

Amplitude add(const Amplitude& a, const Amplitude& b) {
  if (a.zero) return b;
  if (b.zero) return a;
  if (a.r != b.r) throw std::logic_error("amplitudes of unequal magnitude");
  switch (mod8(b.k - a.k)) {
    case 0: return Amplitude::make(a.k, a.r - 2);
    case 4: return Amplitude{};
    case 2: return Amplitude::make(a.k + 1, a.r - 1);
    case 6: return Amplitude::make(a.k - 1, a.r - 1);
    default: throw std::logic_error("amplitudes with odd relative phase");
  }
}

Amplitude times_omega(const Amplitude& a, int k) {
  if (a.zero) return a;
  return Amplitude::make(a.k + k, a.r);
}

Amplitude div_sqrt2(const Amplitude& a) {
  if (a.zero) return a;
  return Amplitude::make(a.k, a.r + 1);
}

static void set_bit(Bits& b, size_t i) { b[i / 64] |= uint64_t(1) << (i % 64); }

void to_bits(const PhasedPauli& p, const std::vector<SiteId>& sites, Bits& x, Bits& z, int& e) {
  size_t words = (sites.size() + 63) / 64;
  x.assign(words, 0);
  z.assign(words, 0);
  e = p.phase();
  for (auto [code, l] : p.ops()) {
    auto it = std::lower_bound(sites.begin(), sites.end(), SiteId::from_code(code));
    if (it == sites.end() || it->code != code) throw std::logic_error("pauli outside state support");
    size_t i = size_t(it - sites.begin());
    if (l & X) set_bit(x, i);
    if (l & Z) set_bit(z, i);
    if (l == Y) e += 2;
  }
  e = mod8(e);
}

PhasedStabilizerState::PhasedStabilizerState(size_t n) : n_(n), words_((n + 63) / 64) {
  rows_.resize(n);
  for (size_t i = 0; i < n; ++i) {
    rows_[i].x.assign(words_, 0);
    rows_[i].z.assign(words_, 0);
    set_bit(rows_[i].z, i);
  }
  ref_.assign(words_, 0);
  amp_ = Amplitude::make(0, 0);
}

int PhasedStabilizerState::popcount_and(const Bits& a, const Bits& b) {
  int c = 0;
  for (size_t i = 0; i < a.size(); ++i) c += std::popcount(a[i] & b[i]);
  return c;
}

void PhasedStabilizerState::apply_pauli(const Bits& x, const Bits& z, int e) {
  for (auto& r : rows_) {
    int s = popcount_and(x, r.z) + popcount_and(z, r.x);
    if (s & 1) r.e = mod8(r.e + 4);
  }
  int sign = popcount_and(z, ref_) & 1;
  for (size_t i = 0; i < words_; ++i) ref_[i] ^= x[i];
  amp_ = times_omega(amp_, e + 4 * sign);
}

void PhasedStabilizerState::conj_row_by_rotation(Row& r, const Bits& px, const Bits& pz, int pe) const {
  int s = popcount_and(px, r.z) + popcount_and(pz, r.x);
  if (!(s & 1)) return;
  // r -> i P r
  int e = pe + r.e + 2 + 4 * (popcount_and(pz, r.x) & 1);
  for (size_t i = 0; i < words_; ++i) {
    r.x[i] ^= px[i];
    r.z[i] ^= pz[i];
  }
  r.e = mod8(e);
}

void PhasedStabilizerState::apply_rotation(const Bits& px, const Bits& pz, int pe) {
  if (pe % 2) throw std::logic_error("rotation axis must be Hermitian");
  Bits y = ref_;
  for (size_t i = 0; i < words_; ++i) y[i] ^= px[i];
  Amplitude A = amp_;
  Amplitude B = amplitude(y);
  // <z|R|psi> = (<z|psi> + i omega^{-pe} (-1)^{pz.z} <z^px|psi>) / sqrt2
  Amplitude at_ref = div_sqrt2(add(A, times_omega(B, 2 - pe + 4 * (popcount_and(pz, ref_) & 1))));
  Bits new_ref = ref_;
  Amplitude new_amp = at_ref;
  if (at_ref.zero) {
    new_ref = y;
    new_amp = div_sqrt2(add(B, times_omega(A, 2 - pe + 4 * (popcount_and(pz, y) & 1))));
    if (new_amp.zero) throw std::logic_error("rotation annihilated the state");
  }
  for (auto& r : rows_) conj_row_by_rotation(r, px, pz, pe);
  ref_ = new_ref;
  amp_ = new_amp;
}

Amplitude PhasedStabilizerState::amplitude(const Bits& y) const {
  Bits target = y;
  for (size_t i = 0; i < words_; ++i) target[i] ^= ref_[i];
  bool trivial = std::all_of(target.begin(), target.end(), [](uint64_t w) { return w == 0; });
  if (trivial) return amp_;
  // Gaussian elimination on X parts, tracking which generators combine.
  size_t m = rows_.size();
  size_t cw = (m + 63) / 64;
  std::vector<Bits> xs(m), comb(m, Bits(cw, 0));
  for (size_t i = 0; i < m; ++i) {
    xs[i] = rows_[i].x;
    comb[i][i / 64] |= uint64_t(1) << (i % 64);
  }
  Bits t = target, tc(cw, 0);
  size_t rank = 0;
  for (size_t col = 0; col < n_ && rank < m; ++col) {
    size_t w = col / 64;
    uint64_t bit = uint64_t(1) << (col % 64);
    size_t piv = rank;
    while (piv < m && !(xs[piv][w] & bit)) ++piv;
    if (piv == m) continue;
    std::swap(xs[piv], xs[rank]);
    std::swap(comb[piv], comb[rank]);
    for (size_t i = 0; i < m; ++i) {
      if (i != rank && (xs[i][w] & bit)) {
        for (size_t k = 0; k < words_; ++k) xs[i][k] ^= xs[rank][k];
        for (size_t k = 0; k < cw; ++k) comb[i][k] ^= comb[rank][k];
      }
    }
    if (t[w] & bit) {
      for (size_t k = 0; k < words_; ++k) t[k] ^= xs[rank][k];
      for (size_t k = 0; k < cw; ++k) tc[k] ^= comb[rank][k];
    }
    ++rank;
  }
  if (!std::all_of(t.begin(), t.end(), [](uint64_t v) { return v == 0; })) return Amplitude{};
  // Multiply the selected generators into S (all commute).
  Bits sx(words_, 0), sz(words_, 0);
  int se = 0;
  for (size_t i = 0; i < m; ++i) {
    if (!(tc[i / 64] & (uint64_t(1) << (i % 64)))) continue;
    const Row& r = rows_[i];
    se += r.e + 4 * (popcount_and(sz, r.x) & 1);
    for (size_t k = 0; k < words_; ++k) {
      sx[k] ^= r.x[k];
      sz[k] ^= r.z[k];
    }
  }
  // S|y> = omega^se (-1)^{sz.y} |ref>, so <y|psi> = omega^{-se} (-1)^{sz.y} <ref|psi>.
  int sign = popcount_and(sz, y) & 1;
  return times_omega(amp_, -se + 4 * sign);
}

void PhasedStabilizerState::apply(const CliffordWord& w, const std::vector<SiteId>& sites) {
  Bits x, z;
  int e;
  // Operator product F1 F2 ... Fn acts on a ket right to left.
  const auto& fs = w.factors();
  for (auto it = fs.rbegin(); it != fs.rend(); ++it) {
    if (auto p = std::get_if<PhasedPauli>(&*it)) {
      to_bits(*p, sites, x, z, e);
      apply_pauli(x, z, e);
    } else {
      const auto& r = std::get<QuarterRotation>(*it);
      to_bits(r.axis, sites, x, z, e);
      apply_rotation(x, z, e);
    }
  }
  amp_ = times_omega(amp_, w.phase());
}

}  // namespace qd
