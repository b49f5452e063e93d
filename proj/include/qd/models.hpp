#pragma once

#include <set>
#include <string>
#include <vector>

#include "qd/lattice.hpp"
#include "qd/pauli.hpp"
#include "qd/qca.hpp"

namespace qd {

enum class ModelId { trivial_paramagnet, levin_gu, toric_code_ancilla, set_toric_code };

// Accepts "levin-gu", "levin_gu", etc.
ModelId parse_model_id(const std::string& s);
std::string model_name(ModelId m);  // hyphenated form
LatticeKind model_lattice(ModelId m);

enum class TermKind { A, B, B_lg, B_tilde, Q, stab_x };
std::string term_kind_name(TermKind k);

// Exact symbolic term; sites are wrapped through lat (tori).
CliffordWord term(ModelId m, TermKind k, SiteId site, const Lattice& lat);
bool term_fits(ModelId m, TermKind k, SiteId site, const Lattice& lat);

struct Term {
  TermKind kind;
  SiteId site;
  CliffordWord word;
  std::string name() const;
};
// All Hamiltonian terms fully supported in the lattice. For the SET model the
// vertex term is Q_v; the projector pair (A_v, Q_v) stands in for Q~_v.
std::vector<Term> hamiltonian_terms(ModelId m, const Lattice& lat);

// On-site Z2 symmetry: X on every vertex (sigma_v or tau_v).
struct SymmetryAction {
  int order = 2;
  std::vector<std::vector<int>> table{{0, 1}, {1, 0}};
  PhasedPauli site_unitary(SiteId s, int g) const;
};
SymmetryAction symmetry(ModelId m);
// prod_{s in sites} U_s^g for the symmetry-carrying sites among `sites`.
PhasedPauli symmetry_unitary(const std::vector<SiteId>& sites, int g = 1);
// beta_g on a word (whole lattice), and restricted to a vertex region.
CliffordWord beta(const CliffordWord& w);
PhasedPauli beta(const PhasedPauli& q);
CliffordWord beta_restricted(const std::set<SiteId>& region, const CliffordWord& w);
PhasedPauli beta_restricted(const std::set<SiteId>& region, const PhasedPauli& q);

// Entanglers.
Circuit levin_gu_entangler(const Lattice& lat, double theta = M_PI / 24);
Circuit set_entangler(const Lattice& lat);
// One layer of single-edge erasure rotations along the vertical dual line x = x0 + 1/2.
Circuit erasure_line_circuit(const Lattice& lat, int x0);
// "builtin:levin-gu-entangler", "builtin:set-erasure-line".
Circuit builtin_circuit(const std::string& name, const Lattice& lat);

// String operators on the square lattice.
std::vector<SiteId> path_edges(const std::vector<SiteId>& vertices);
CliffordWord eps_string(const std::vector<SiteId>& path_vertices);        // F_gamma
CliffordWord eps_tilde_string(const std::vector<SiteId>& path_vertices);  // alpha(F_gamma)
CliffordWord m_string(const DualPath& p);                                 // X-string
CliffordWord sigma_erasure(const DualPath& p);                            // F^sigma
// Sites wrapped through a lattice (for tori); factors are re-multiplied.
CliffordWord wrap(const CliffordWord& w, const Lattice& lat);
PhasedPauli wrap(const PhasedPauli& p, const Lattice& lat);

struct AuditReport {
  std::string name;
  size_t checks = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
  void expect(bool cond, const std::string& what) {
    ++checks;
    if (!cond) failures.push_back(what);
  }
};

AuditReport commuting_projector_audit(ModelId m, const Lattice& lat);
AuditReport symmetry_invariance_audit(ModelId m, const Lattice& lat);
// Dense entangler identities on every qubit at boundary distance >= margin.
AuditReport entangler_audit(ModelId m, const Lattice& lat, int margin);

// beta_g^{region} applied to a term; for B~_f the result equals
// (prod_{e in L cap f} i p(e) X_e) B~_f when region = r(L).
CliffordWord restricted_symmetry_on_term(const Term& t, const std::set<SiteId>& region);
// The correction factor prod_{v in region cap f} prod_{e in f, e ni v} i g(e,v) X_e.
CliffordWord btilde_correction(SiteId face, const std::set<SiteId>& region);

}  // namespace qd
