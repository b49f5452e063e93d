#pragma once

#include <cstdint>
#include <vector>

#include "qd/pauli.hpp"

namespace qd {

// Exact amplitude omega^k * 2^{-r/2}, or zero.
struct Amplitude {
  bool zero = true;
  int k = 0;
  int r = 0;
  static Amplitude make(int k, int r) { return {false, mod8(k), r}; }
  bool operator==(const Amplitude& o) const {
    return zero == o.zero && (zero || (k == o.k && r == o.r));
  }
  double magnitude() const;
};

Amplitude add(const Amplitude& a, const Amplitude& b);
Amplitude times_omega(const Amplitude& a, int k);
Amplitude div_sqrt2(const Amplitude& a);

using Bits = std::vector<uint64_t>;

// Stabilizer state on n qubits with tracked global phase. The state is kept as
// stabilizer generators plus one reference basis state and its exact amplitude.
class PhasedStabilizerState {
 public:
  explicit PhasedStabilizerState(size_t n);  // |0...0>

  size_t size() const { return n_; }

  // Gate omega^e X^x Z^z.
  void apply_pauli(const Bits& x, const Bits& z, int e);
  // Gate e^{i pi/4 P} = (1 + iP)/sqrt2 for Hermitian P = omega^e X^x Z^z.
  void apply_rotation(const Bits& x, const Bits& z, int e);

  Amplitude amplitude(const Bits& y) const;
  Amplitude amplitude_zero() const { return amplitude(Bits(words_, 0)); }

  // Applies a word whose sites are indexed by their position in `sites`.
  void apply(const CliffordWord& w, const std::vector<SiteId>& sites);

 private:
  struct Row {
    Bits x, z;
    int e = 0;
  };
  static int popcount_and(const Bits& a, const Bits& b);
  void conj_row_by_rotation(Row& r, const Bits& px, const Bits& pz, int pe) const;

  size_t n_, words_;
  std::vector<Row> rows_;
  Bits ref_;
  Amplitude amp_;
};

// Converts a phased Pauli to omega^e X^x Z^z over the given site order.
void to_bits(const PhasedPauli& p, const std::vector<SiteId>& sites, Bits& x, Bits& z, int& e);

}  // namespace qd
