#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qd/lattice.hpp"

namespace qd {

// Single-site letters: bit 0 = X part, bit 1 = Z part; 3 is the Hermitian Y = iXZ.
enum Letter : uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

inline int mod8(int k) { return ((k % 8) + 8) % 8; }

// omega^phase * prod_s P_s with omega = e^{i pi/4}; ops sorted by site code,
// identities never stored.
class PhasedPauli {
 public:
  PhasedPauli() = default;
  explicit PhasedPauli(int phase) : phase_(mod8(phase)) {}
  static PhasedPauli single(SiteId s, Letter l, int phase = 0);
  static PhasedPauli product(const std::vector<SiteId>& sites, Letter l, int phase = 0);
  static PhasedPauli from_ops(std::vector<std::pair<uint64_t, uint8_t>> ops, int phase = 0);

  int phase() const { return phase_; }
  const std::vector<std::pair<uint64_t, uint8_t>>& ops() const { return ops_; }
  bool is_scalar() const { return ops_.empty(); }
  bool is_hermitian() const { return phase_ == 0 || phase_ == 4; }
  Letter at(SiteId s) const;
  std::vector<SiteId> support() const;
  size_t weight() const { return ops_.size(); }

  PhasedPauli with_phase(int k) const { PhasedPauli p = *this; p.phase_ = mod8(k); return p; }
  PhasedPauli operator-() const { return with_phase(phase_ + 4); }
  PhasedPauli inverse() const { return with_phase(-phase_); }
  PhasedPauli restricted(const std::vector<SiteId>& keep) const;

  bool commutes(const PhasedPauli& o) const;
  std::string str() const;
  static PhasedPauli parse(const std::string& s);

  bool operator==(const PhasedPauli& o) const { return phase_ == o.phase_ && ops_ == o.ops_; }
  bool operator!=(const PhasedPauli& o) const { return !(*this == o); }
  bool operator<(const PhasedPauli& o) const {
    return ops_ != o.ops_ ? ops_ < o.ops_ : phase_ < o.phase_;
  }

  friend PhasedPauli operator*(const PhasedPauli& a, const PhasedPauli& b);

 private:
  int phase_ = 0;
  std::vector<std::pair<uint64_t, uint8_t>> ops_;
};

PhasedPauli mul(const PhasedPauli& a, const PhasedPauli& b);

// e^{i pi/4 P} with P = axis a Hermitian phased Pauli (phase 0 or 4).
struct QuarterRotation {
  PhasedPauli axis;
  explicit QuarterRotation(PhasedPauli p);
  QuarterRotation inverse() const { return QuarterRotation(-axis); }
  bool operator==(const QuarterRotation& o) const { return axis == o.axis; }
};

PhasedPauli conj_rotation(const QuarterRotation& r, const PhasedPauli& q);
PhasedPauli conj_pauli(const PhasedPauli& p, const PhasedPauli& q);

using Factor = std::variant<PhasedPauli, QuarterRotation>;

// omega^phase * F_1 F_2 ... F_n (operator product, left to right).
class CliffordWord {
 public:
  CliffordWord() = default;
  explicit CliffordWord(int phase) : phase_(mod8(phase)) {}
  CliffordWord(const PhasedPauli& p) { append(p); }  // NOLINT: implicit lift
  CliffordWord(const QuarterRotation& r) { append(r); }  // NOLINT: implicit lift

  int phase() const { return phase_; }
  const std::vector<Factor>& factors() const { return factors_; }
  size_t size() const { return factors_.size(); }

  CliffordWord& append(const PhasedPauli& p);
  CliffordWord& append(const QuarterRotation& r);
  CliffordWord& append(const CliffordWord& w);
  CliffordWord& add_phase(int k) { phase_ = mod8(phase_ + k); return *this; }

  CliffordWord inverse() const;
  std::vector<SiteId> support() const;
  std::string str() const;

  friend CliffordWord operator*(const CliffordWord& a, const CliffordWord& b);

 private:
  int phase_ = 0;
  std::vector<Factor> factors_;
};

CliffordWord rot(const PhasedPauli& axis);  // e^{i pi/4 axis}

PhasedPauli ad(const CliffordWord& w, const PhasedPauli& q);
// Factorwise conjugation of a word by a word: every Pauli factor and every
// rotation axis is mapped through Ad(u).
CliffordWord ad(const CliffordWord& u, const CliffordWord& w);

struct CliffordTableau {
  std::vector<SiteId> sites;
  std::vector<PhasedPauli> x_images, z_images;
  bool operator==(const CliffordTableau&) const = default;
  bool symplectic() const;
};

CliffordTableau tableau(const CliffordWord& w, const std::vector<SiteId>& sites);

bool equal_including_phase(const CliffordWord& a, const CliffordWord& b);
bool equal_up_to_phase(const CliffordWord& a, const CliffordWord& b);

struct ScalarPauli {
  int phase = 0;    // word = omega^phase * pauli
  PhasedPauli pauli;  // phase 0
};
std::optional<ScalarPauli> scalar_pauli_decompose(const CliffordWord& w);

}  // namespace qd
