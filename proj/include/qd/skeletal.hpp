#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qd/defects.hpp"

namespace qd {

struct SkeletalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Catalog sectors of a model: labels, Z2 grades and their programs, plus the
// ball on which programs are compared.
struct SectorCatalog {
  ModelId model;
  std::vector<std::string> labels;
  std::vector<int> grade;
  std::vector<ConjugationProgram> programs;
  MatchBall ball;
  std::optional<SetGeometry> geometry;  // SET transport geometry

  size_t size() const { return labels.size(); }
  int index(const std::string& label) const;
};

// Levin-Gu and paramagnet: {1, g}; SET: the eight sectors.
SectorCatalog sector_catalog(ModelId m, int depth = 16);

// Label c with rho_c = Ad(Omega) o rho_i o rho_j; throws if unmatched.
std::vector<std::vector<int>> fusion_table(const SectorCatalog& cat);
// Omega_{i,j} (phase 0) for every pair.
std::vector<std::vector<PhasedPauli>> tensorators(const SectorCatalog& cat, const std::vector<std::vector<int>>& fusion);

struct Fractionalization {
  std::vector<std::vector<int>> action;        // [g][i] -> g(i)
  std::vector<std::vector<PhasedPauli>> V;     // [g][i]
  std::vector<int> eta;                        // (g,h,i), Z8
  std::vector<int> mu;                         // (g,i,j), Z8
};

struct BraidEntry {
  bool computed = false;
  PhasedPauli value;  // omega^k times a Pauli
};

struct Check {
  std::string name;
  std::string ref;
  std::string status;  // pass | fail | skipped
  std::string detail;
  size_t instances = 0;
};

struct SkeletalReport {
  ModelId model = ModelId::trivial_paramagnet;
  std::vector<std::string> labels;
  std::vector<int> grade;
  std::vector<int> Ns;
  std::vector<std::vector<int>> fusion;
  std::vector<std::vector<PhasedPauli>> omega;
  std::vector<int> F;  // (i,j,k), Z8
  Fractionalization frac;
  std::vector<std::vector<BraidEntry>> braid;
  std::vector<std::vector<std::optional<int>>> R;
  std::vector<Check> extraction;  // checks that need the programs

  size_t n() const { return labels.size(); }
  int f(int i, int j, int k) const { return F[size_t((i * int(n()) + j) * int(n()) + k)]; }
  int eta(int g, int h, int i) const { return frac.eta[size_t((g * 2 + h) * int(n()) + i)]; }
  int mu(int g, int i, int j) const { return frac.mu[size_t((g * int(n()) + i) * int(n()) + j)]; }
  bool has_braiding() const { return !braid.empty(); }
};

std::vector<int> f_symbols(const SectorCatalog& cat, const std::vector<std::vector<int>>& fusion,
                           const std::vector<std::vector<PhasedPauli>>& omega);
Fractionalization fractionalization(const SectorCatalog& cat, const std::vector<std::vector<int>>& fusion,
                                    const std::vector<std::vector<PhasedPauli>>& omega);
// c_{a,b} = gamma_{da}(rho_b)((U^a)^*) U^a at every N; throws on N-dependence.
std::vector<std::vector<BraidEntry>> braiding_table(const SectorCatalog& cat, const std::vector<int>& Ns);

SkeletalReport extract_skeletal(ModelId m, const std::vector<int>& Ns = {2, 3, 4}, int depth = 16);

// Evaluates every instance of the table relations exactly in Z8.
std::vector<Check> consistency_check(const SkeletalReport& r);

// Human-readable braiding table.
std::string braiding_text(const SkeletalReport& r);

}  // namespace qd
