#include "qd/pauli.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "qd/stabilizer.hpp"

namespace qd {

PhasedPauli PhasedPauli::single(SiteId s, Letter l, int phase) {
  PhasedPauli p(phase);
  if (l != I) p.ops_.push_back({s.code, uint8_t(l)});
  return p;
}

PhasedPauli PhasedPauli::product(const std::vector<SiteId>& sites, Letter l, int phase) {
  PhasedPauli p(phase);
  for (auto s : sites) p = p * single(s, l);
  return p;
}

PhasedPauli PhasedPauli::from_ops(std::vector<std::pair<uint64_t, uint8_t>> ops, int phase) {
  std::sort(ops.begin(), ops.end());
  PhasedPauli p(phase);
  for (auto& [c, l] : ops) {
    if (!p.ops_.empty() && p.ops_.back().first == c) throw std::invalid_argument("duplicate site in pauli");
    if (l != I) p.ops_.push_back({c, l});
  }
  return p;
}

Letter PhasedPauli::at(SiteId s) const {
  auto it = std::lower_bound(ops_.begin(), ops_.end(), std::pair<uint64_t, uint8_t>{s.code, 0});
  if (it != ops_.end() && it->first == s.code) return Letter(it->second);
  return I;
}

std::vector<SiteId> PhasedPauli::support() const {
  std::vector<SiteId> out;
  out.reserve(ops_.size());
  for (auto& [c, l] : ops_) out.push_back(SiteId::from_code(c));
  return out;
}

PhasedPauli PhasedPauli::restricted(const std::vector<SiteId>& keep) const {
  PhasedPauli p(phase_);
  for (auto& op : ops_)
    if (std::binary_search(keep.begin(), keep.end(), SiteId::from_code(op.first))) p.ops_.push_back(op);
  return p;
}

bool PhasedPauli::commutes(const PhasedPauli& o) const {
  int anti = 0;
  auto i = ops_.begin(), j = o.ops_.begin();
  while (i != ops_.end() && j != o.ops_.end()) {
    if (i->first < j->first) ++i;
    else if (j->first < i->first) ++j;
    else {
      if (i->second != j->second) ++anti;
      ++i;
      ++j;
    }
  }
  return (anti & 1) == 0;
}

// P(l1) P(l2) = omega^{2(y1+y2-y3) + 4 z1 x2} P(l1 ^ l2)
static int letter_product_phase(uint8_t a, uint8_t b) {
  int y1 = a == Y, y2 = b == Y, y3 = (a ^ b) == Y;
  int z1x2 = ((a >> 1) & 1) & (b & 1);
  return 2 * (y1 + y2 - y3) + 4 * z1x2;
}

PhasedPauli operator*(const PhasedPauli& a, const PhasedPauli& b) {
  PhasedPauli r;
  int k = a.phase_ + b.phase_;
  r.ops_.reserve(a.ops_.size() + b.ops_.size());
  auto i = a.ops_.begin(), j = b.ops_.begin();
  while (i != a.ops_.end() || j != b.ops_.end()) {
    if (j == b.ops_.end() || (i != a.ops_.end() && i->first < j->first)) {
      r.ops_.push_back(*i++);
    } else if (i == a.ops_.end() || j->first < i->first) {
      r.ops_.push_back(*j++);
    } else {
      k += letter_product_phase(i->second, j->second);
      uint8_t l = i->second ^ j->second;
      if (l) r.ops_.push_back({i->first, l});
      ++i;
      ++j;
    }
  }
  r.phase_ = mod8(k);
  return r;
}

PhasedPauli mul(const PhasedPauli& a, const PhasedPauli& b) { return a * b; }

std::string PhasedPauli::str() const {
  static const char* ph[] = {"+", "+w", "+i", "+iw", "-", "-w", "-i", "-iw"};
  std::ostringstream os;
  os << ph[phase_];
  if (ops_.empty()) os << "I";
  bool first = true;
  for (auto& [c, l] : ops_) {
    if (!first) os << '*';
    first = false;
    os << "IXZY"[l] << SiteId::from_code(c).str();
  }
  return os.str();
}

PhasedPauli PhasedPauli::parse(const std::string& s) {
  static const char* ph[] = {"+iw", "-iw", "+w", "-w", "+i", "-i", "+", "-"};
  static const int pk[] = {3, 7, 1, 5, 2, 6, 0, 4};
  size_t pos = 0;
  int phase = 0;
  for (int i = 0; i < 8; ++i) {
    std::string p = ph[i];
    if (s.compare(0, p.size(), p) == 0) {
      phase = pk[i];
      pos = p.size();
      break;
    }
  }
  PhasedPauli out(phase);
  std::string rest = s.substr(pos);
  if (rest == "I") return out;
  std::istringstream is(rest);
  std::string tok;
  while (std::getline(is, tok, '*')) {
    if (tok.size() < 2) throw std::invalid_argument("bad pauli token: " + tok);
    Letter l;
    switch (tok[0]) {
      case 'X': l = X; break;
      case 'Y': l = Y; break;
      case 'Z': l = Z; break;
      default: throw std::invalid_argument("bad pauli letter: " + tok);
    }
    out = out * single(SiteId::parse(tok.substr(1)), l);
  }
  return out;
}

QuarterRotation::QuarterRotation(PhasedPauli p) : axis(std::move(p)) {
  if (!axis.is_hermitian()) throw std::invalid_argument("rotation axis must be Hermitian");
}

PhasedPauli conj_rotation(const QuarterRotation& r, const PhasedPauli& q) {
  if (r.axis.commutes(q)) return q;
  PhasedPauli p = r.axis * q;
  return p.with_phase(p.phase() + 2);
}

PhasedPauli conj_pauli(const PhasedPauli& p, const PhasedPauli& q) {
  return p.commutes(q) ? q : -q;
}

CliffordWord& CliffordWord::append(const PhasedPauli& p) {
  if (p.is_scalar()) {
    phase_ = mod8(phase_ + p.phase());
    return *this;
  }
  factors_.emplace_back(p);
  return *this;
}

CliffordWord& CliffordWord::append(const QuarterRotation& r) {
  if (r.axis.is_scalar()) {
    // e^{i pi/4 (+-1)}
    phase_ = mod8(phase_ + (r.axis.phase() == 0 ? 1 : -1));
    return *this;
  }
  factors_.emplace_back(r);
  return *this;
}

CliffordWord& CliffordWord::append(const CliffordWord& w) {
  phase_ = mod8(phase_ + w.phase_);
  factors_.insert(factors_.end(), w.factors_.begin(), w.factors_.end());
  return *this;
}

CliffordWord operator*(const CliffordWord& a, const CliffordWord& b) {
  CliffordWord r = a;
  r.append(b);
  return r;
}

CliffordWord CliffordWord::inverse() const {
  CliffordWord r(-phase_);
  for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) {
    if (auto p = std::get_if<PhasedPauli>(&*it)) r.factors_.emplace_back(p->inverse());
    else r.factors_.emplace_back(std::get<QuarterRotation>(*it).inverse());
  }
  return r;
}

std::vector<SiteId> CliffordWord::support() const {
  std::vector<uint64_t> codes;
  for (auto& f : factors_) {
    const PhasedPauli& p = std::holds_alternative<PhasedPauli>(f) ? std::get<PhasedPauli>(f)
                                                                    : std::get<QuarterRotation>(f).axis;
    for (auto& [c, l] : p.ops()) codes.push_back(c);
  }
  std::sort(codes.begin(), codes.end());
  codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
  std::vector<SiteId> out;
  out.reserve(codes.size());
  for (auto c : codes) out.push_back(SiteId::from_code(c));
  return out;
}

std::string CliffordWord::str() const {
  std::ostringstream os;
  os << "w^" << phase_;
  for (auto& f : factors_) {
    if (auto p = std::get_if<PhasedPauli>(&f)) os << " [" << p->str() << "]";
    else os << " exp(i pi/4 " << std::get<QuarterRotation>(f).axis.str() << ")";
  }
  return os.str();
}

CliffordWord rot(const PhasedPauli& axis) { return CliffordWord(QuarterRotation(axis)); }

PhasedPauli ad(const CliffordWord& w, const PhasedPauli& q) {
  PhasedPauli r = q;
  const auto& fs = w.factors();
  for (auto it = fs.rbegin(); it != fs.rend(); ++it) {
    if (auto p = std::get_if<PhasedPauli>(&*it)) r = conj_pauli(*p, r);
    else r = conj_rotation(std::get<QuarterRotation>(*it), r);
  }
  return r;
}

CliffordWord ad(const CliffordWord& u, const CliffordWord& w) {
  CliffordWord r(w.phase());
  for (auto& f : w.factors()) {
    if (auto p = std::get_if<PhasedPauli>(&f)) r.append(ad(u, *p));
    else r.append(QuarterRotation(ad(u, std::get<QuarterRotation>(f).axis)));
  }
  return r;
}

bool CliffordTableau::symplectic() const {
  size_t n = sites.size();
  for (size_t i = 0; i < n; ++i) {
    if (!x_images[i].is_hermitian() || !z_images[i].is_hermitian()) return false;
    for (size_t j = 0; j < n; ++j) {
      bool same = i == j;
      if (!x_images[i].commutes(x_images[j])) return false;
      if (!z_images[i].commutes(z_images[j])) return false;
      if (x_images[i].commutes(z_images[j]) == same) return false;
    }
  }
  return true;
}

CliffordTableau tableau(const CliffordWord& w, const std::vector<SiteId>& sites) {
  CliffordTableau t;
  t.sites = sites;
  for (auto s : sites) {
    t.x_images.push_back(ad(w, PhasedPauli::single(s, X)));
    t.z_images.push_back(ad(w, PhasedPauli::single(s, Z)));
  }
  return t;
}

static std::vector<SiteId> joint_support(const CliffordWord& a, const CliffordWord& b) {
  auto sa = a.support(), sb = b.support();
  std::vector<SiteId> out;
  std::set_union(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(out));
  return out;
}

static bool same_action(const CliffordWord& a, const CliffordWord& b, const std::vector<SiteId>& sites) {
  for (auto s : sites) {
    for (Letter l : {X, Z}) {
      auto q = PhasedPauli::single(s, l);
      if (ad(a, q) != ad(b, q)) return false;
    }
  }
  return true;
}

// <0|w|0> for a word known to act as a scalar on its support.
static Amplitude scalar_amplitude(const CliffordWord& w, const std::vector<SiteId>& sites) {
  PhasedStabilizerState st(sites.size());
  st.apply(w, sites);
  return st.amplitude_zero();
}

bool equal_up_to_phase(const CliffordWord& a, const CliffordWord& b) {
  return same_action(a, b, joint_support(a, b));
}

bool equal_including_phase(const CliffordWord& a, const CliffordWord& b) {
  auto sites = joint_support(a, b);
  if (!same_action(a, b, sites)) return false;
  Amplitude l = scalar_amplitude(a * b.inverse(), sites);
  return !l.zero && l.r == 0 && l.k == 0;
}

std::optional<ScalarPauli> scalar_pauli_decompose(const CliffordWord& w) {
  auto sites = w.support();
  std::vector<std::pair<uint64_t, uint8_t>> ops;
  for (auto s : sites) {
    auto xi = ad(w, PhasedPauli::single(s, X));
    auto zi = ad(w, PhasedPauli::single(s, Z));
    auto px = PhasedPauli::single(s, X), pz = PhasedPauli::single(s, Z);
    bool xflip, zflip;
    if (xi == px) xflip = false;
    else if (xi == -px) xflip = true;
    else return std::nullopt;
    if (zi == pz) zflip = false;
    else if (zi == -pz) zflip = true;
    else return std::nullopt;
    uint8_t l = uint8_t((zflip ? X : 0) | (xflip ? Z : 0));
    if (l) ops.push_back({s.code, l});
  }
  PhasedPauli p = PhasedPauli::from_ops(ops);
  Amplitude lam = scalar_amplitude(CliffordWord(p) * w, sites);
  if (lam.zero || lam.r != 0) return std::nullopt;
  return ScalarPauli{lam.k, p};
}

}  // namespace qd
