#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qd/models.hpp"

namespace qd {

// Plane position of a site on either lattice.
Point site_point(SiteId s);

using SitePredicate = std::function<bool(SiteId)>;

// One stage of a conjugation program: Ad(word), or the on-site Z2 symmetry
// restricted to the vertices where `in_region` holds (all vertices if empty).
struct Stage {
  enum Kind { conj, symmetry } kind = conj;
  CliffordWord word;
  SitePredicate in_region;
  std::string truncates;  // infinite object this stage truncates; empty if exact
};

// Automorphism of the local algebra given as stages applied first to last.
class ConjugationProgram {
 public:
  std::string name;
  std::vector<Stage> stages;

  static ConjugationProgram identity(std::string name = "1");
  static ConjugationProgram conj(CliffordWord w, std::string name = "", std::string truncates = "");
  static ConjugationProgram symmetry(SitePredicate in_region, std::string name = "");

  PhasedPauli apply(const PhasedPauli& q) const;
  CliffordWord apply(const CliffordWord& w) const;
  ConjugationProgram inverse() const;
};

// outer o inner (inner stages run first).
ConjugationProgram compose(const ConjugationProgram& outer, const ConjugationProgram& inner);
// gamma_g(p) = beta_g o p o beta_g.
ConjugationProgram gamma_g(const ConjugationProgram& p);

// Normal form Ad(word) o beta^{R}, R the symmetric difference of the
// symmetry-stage regions.
struct Collapsed {
  CliffordWord word;
  std::vector<SitePredicate> regions;
  bool in_region(SiteId v) const;
  bool region_empty_on(const std::vector<SiteId>& sites) const;
};
Collapsed collapse(const ConjugationProgram& p);

// Qubits around a centre used to compare programs; the frontier is the outer
// layer where a witness may not reach.
struct MatchBall {
  std::vector<SiteId> sites;
  std::set<SiteId> frontier;
};
MatchBall match_ball(const Lattice& lat, Point centre, int radius);

// Phase-0 Pauli V with p = Ad(V) o q on every generator of the ball, if one
// exists and stays off the frontier.
std::optional<PhasedPauli> inner_witness(const ConjugationProgram& p, const ConjugationProgram& q,
                                         const MatchBall& ball);

// Straight defect ray on either lattice: base point on the dual lattice and a
// unit axis direction. The completion L runs through the base along the axis.
struct Ray {
  Point base;
  int dx = 0, dy = 1;
  static Ray from_path(const DualPath& p);
  bool right_of_line(Point p) const;  // r(L)
  // Signed position along L relative to the base (positive on the ray).
  double along(Point p) const;
  double across(Point p) const;  // signed distance from L, positive on the right
  double distance(Point p) const;  // distance to the ray itself
};

// Levin-Gu: decoration word along the part of L with along-coordinate in
// [lo, hi], edge flags from the tripartite colouring.
CliffordWord levin_gu_decoration(const Ray& r, double lo, double hi);
// Closed form of Ad(prod_{v in r(L)} B_v) with the decoration truncated at +-depth.
ConjugationProgram levin_gu_line_program(const Ray& r, int depth);
// Brute-force prod_{v in r(L) cap lat} B_v.
CliffordWord levin_gu_line_product(const Ray& r, const Lattice& lat);
// alpha^gamma = Ad(decoration on gamma') o beta^{r(L)}, gamma' truncated at depth.
ConjugationProgram levin_gu_defect_program(const DualPath& gamma, int depth);
// Collapsed alpha^gamma o alpha^gamma as a scalar times Pauli.
ScalarPauli levin_gu_defect_square(const DualPath& gamma, int depth);
// The two vertices of gamma' nearest the defect end (in and out of r(L)).
std::pair<SiteId, SiteId> levin_gu_defect_end(const DualPath& gamma);
// Twisted term (alpha^gamma)^{-1}(B_v).
CliffordWord levin_gu_twisted_term(const DualPath& gamma, int depth, SiteId v, const Lattice& lat);

// Square-lattice SET: erasure-string defect alpha^sigma_eta o beta^{r(L)}, eta
// the part of L behind the ray, truncated at depth.
ConjugationProgram set_defect_program(const DualPath& gamma_bar, int depth);
DualPath ray_complement(const DualPath& gamma_bar, int depth);

// Reference geometry around vertex 0 = origin.
struct SetGeometry {
  SiteId origin = SiteId::vertex(0, 0);
  int depth = 24;

  DualPath defect_ray() const;                // gamma_R, up from (x0+1/2, y0+1/2)
  DualPath eta() const;                       // lower part of L, up to (x0+1/2, y0+1/2)
  std::vector<SiteId> gamma_vertices() const;  // 0 straight down `depth` edges
  bool in_r(SiteId v) const;                  // r(L)
  DualPath xi(int N) const;
  std::vector<SiteId> region_A(int N) const;
  std::vector<SiteId> zeta(int N) const;
};

extern const std::vector<std::string> kSetLabels;  // 1 eps m psi 1^sigma ...
bool is_sigma_label(const std::string& label);
std::string anyon_part(const std::string& label);  // "psi^sigma" -> "psi"
ConjugationProgram set_sector_program(const std::string& label, const SetGeometry& g);

enum class TransportKind { sigma, m, eps, psi };
TransportKind parse_transport_kind(const std::string& s);
CliffordWord transport_unitary(TransportKind k, int N, const SetGeometry& g);
// Transporter of any SET label: U^{a^sigma} = U^sigma 1^sigma(U^a).
CliffordWord sector_transport(const std::string& label, int N, const SetGeometry& g);

struct TransportFamily {
  TransportKind kind;
  std::vector<int> Ns;
  std::vector<CliffordWord> U;
};
TransportFamily transport_family(TransportKind k, const std::vector<int>& Ns, const SetGeometry& g);

struct DefectHamiltonianTerm {
  Term base;
  CliffordWord twisted;
};
std::vector<DefectHamiltonianTerm> defect_terms(const ConjugationProgram& program, ModelId m, const Lattice& lat,
                                                int margin);

// Twisted terms Hermitian, involutive, commuting; terms farther than `range`
// from the ray equal their untwisted form (Q_v up to the absorbed A_v).
AuditReport defect_hamiltonian_audit(const ConjugationProgram& program, ModelId m, const Lattice& lat,
                                     const DualPath& gamma, int margin, double range);

// program(C_s) = C_s for every term of the SET model with support farther
// than `range` from the ray.
AuditReport erasure_audit(const ConjugationProgram& program, const Lattice& lat, const DualPath& gamma_bar,
                          int margin, double range);

struct LocalizationReport {
  size_t checks = 0;
  std::set<SiteId> discrepancies;
  bool bounded = true;  // no discrepancy within `margin` of the window edge
  bool ok() const { return bounded; }
};
// program(q) against beta_g^{r(cone)}(q) (g = 1: against q) for single-site
// generators outside the cone.
LocalizationReport localization_audit(const ConjugationProgram& program, const Cone& cone, Point origin,
                                      int g, const Lattice& lat, int margin);

// Doubling the truncation depth leaves the action on the given sites unchanged.
AuditReport stabilization_audit(const std::function<ConjugationProgram(int)>& family, int depth,
                                const std::vector<SiteId>& sites);

// Dual loop around a rectangle of vertices, clockwise unless reversed.
DualPath loop_around(const std::vector<SiteId>& vertices, bool clockwise = true);
// Max deviation of P_S prod Q_v from P_S F^sigma_loop prod tau^x (dense).
double boundary_string_deviation(const std::vector<SiteId>& S, bool clockwise);
// F^sigma_{xi1} (F^sigma_{xi2})^* prod_{v in S} tau^x_v.
CliffordWord pizza_operator(const DualPath& xi1, const DualPath& xi2, const std::vector<SiteId>& S);

}  // namespace qd
