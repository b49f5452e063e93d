#include "qd/defects.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qd/dense.hpp"

namespace qd {

namespace {

PhasedPauli pz(SiteId s) { return PhasedPauli::single(s, Z); }

std::vector<SiteId> filter(const std::vector<SiteId>& sites, const SitePredicate& pred) {
  std::vector<SiteId> out;
  for (auto s : sites)
    if (s.kind() == SiteKind::vertex && (!pred || pred(s))) out.push_back(s);
  return out;
}

PhasedPauli sym_on(const SitePredicate& pred, const PhasedPauli& q) {
  return conj_pauli(symmetry_unitary(filter(q.support(), pred)), q);
}

CliffordWord sym_on(const SitePredicate& pred, const CliffordWord& w) {
  return ad(CliffordWord(symmetry_unitary(filter(w.support(), pred))), w);
}

bool near(double a, double b) { return std::abs(a - b) < 1e-9; }

}  // namespace

Point site_point(SiteId s) {
  if (s.kind() == SiteKind::vertex) return {double(s.x()), double(s.y())};
  return sq::position(s);
}

// ---------------------------------------------------------------- programs

ConjugationProgram ConjugationProgram::identity(std::string name) {
  ConjugationProgram p;
  p.name = std::move(name);
  return p;
}

ConjugationProgram ConjugationProgram::conj(CliffordWord w, std::string name, std::string truncates) {
  ConjugationProgram p;
  p.name = std::move(name);
  p.stages.push_back({Stage::conj, std::move(w), nullptr, std::move(truncates)});
  return p;
}

ConjugationProgram ConjugationProgram::symmetry(SitePredicate in_region, std::string name) {
  ConjugationProgram p;
  p.name = std::move(name);
  p.stages.push_back({Stage::symmetry, CliffordWord(), std::move(in_region), ""});
  return p;
}

PhasedPauli ConjugationProgram::apply(const PhasedPauli& q) const {
  PhasedPauli r = q;
  for (auto& s : stages) r = s.kind == Stage::conj ? ad(s.word, r) : sym_on(s.in_region, r);
  return r;
}

CliffordWord ConjugationProgram::apply(const CliffordWord& w) const {
  CliffordWord r = w;
  for (auto& s : stages) r = s.kind == Stage::conj ? ad(s.word, r) : sym_on(s.in_region, r);
  return r;
}

ConjugationProgram ConjugationProgram::inverse() const {
  ConjugationProgram p;
  p.name = name.empty() ? "" : name + "^-1";
  for (auto it = stages.rbegin(); it != stages.rend(); ++it) {
    Stage s = *it;
    if (s.kind == Stage::conj) s.word = s.word.inverse();
    p.stages.push_back(std::move(s));
  }
  return p;
}

ConjugationProgram compose(const ConjugationProgram& outer, const ConjugationProgram& inner) {
  ConjugationProgram p;
  p.name = outer.name + "*" + inner.name;
  p.stages = inner.stages;
  p.stages.insert(p.stages.end(), outer.stages.begin(), outer.stages.end());
  return p;
}

ConjugationProgram gamma_g(const ConjugationProgram& p) {
  auto b = ConjugationProgram::symmetry(nullptr, "beta");
  auto r = compose(b, compose(p, b));
  r.name = "gamma(" + p.name + ")";
  return r;
}

bool Collapsed::in_region(SiteId v) const {
  if (v.kind() != SiteKind::vertex) return false;
  bool in = false;
  for (auto& r : regions) in ^= (!r || r(v));
  return in;
}

bool Collapsed::region_empty_on(const std::vector<SiteId>& sites) const {
  for (auto s : sites)
    if (in_region(s)) return false;
  return true;
}

Collapsed collapse(const ConjugationProgram& p) {
  Collapsed c;
  for (auto& s : p.stages) {
    if (s.kind == Stage::conj) {
      c.word = s.word * c.word;
    } else {
      c.word = sym_on(s.in_region, c.word);
      c.regions.push_back(s.in_region);
    }
  }
  return c;
}

MatchBall match_ball(const Lattice& lat, Point centre, int radius) {
  MatchBall b;
  for (auto s : lat.qubits()) {
    Point p = site_point(s);
    double d = std::max(std::abs(p.x - centre.x), std::abs(p.y - centre.y));
    if (d > radius + 1e-9) continue;
    b.sites.push_back(s);
    if (d > radius - 1 + 1e-9) b.frontier.insert(s);
  }
  return b;
}

std::optional<PhasedPauli> inner_witness(const ConjugationProgram& p, const ConjugationProgram& q,
                                         const MatchBall& ball) {
  auto qi = q.inverse();
  std::vector<std::pair<uint64_t, uint8_t>> ops;
  for (auto s : ball.sites) {
    uint8_t letter = 0;
    for (Letter l : {X, Z}) {
      auto g = PhasedPauli::single(s, l);
      auto r = p.apply(qi.apply(g));
      if (r == -g) letter |= (l == X ? Z : X);
      else if (r != g) return std::nullopt;
    }
    if (letter) {
      if (ball.frontier.count(s)) return std::nullopt;
      ops.push_back({s.code, letter});
    }
  }
  return PhasedPauli::from_ops(ops);
}

// ---------------------------------------------------------------- rays

Ray Ray::from_path(const DualPath& p) {
  if (p.pts.size() < 2) throw std::invalid_argument("ray needs two points");
  Ray r;
  r.base = p.pts[0];
  double ddx = p.pts[1].x - p.pts[0].x, ddy = p.pts[1].y - p.pts[0].y;
  if ((ddx != 0) == (ddy != 0)) throw std::invalid_argument("ray must be axis-aligned");
  r.dx = ddx > 0 ? 1 : ddx < 0 ? -1 : 0;
  r.dy = ddy > 0 ? 1 : ddy < 0 ? -1 : 0;
  return r;
}

double Ray::along(Point p) const { return (p.x - base.x) * dx + (p.y - base.y) * dy; }
double Ray::across(Point p) const { return (p.x - base.x) * dy - (p.y - base.y) * dx; }
bool Ray::right_of_line(Point p) const { return across(p) > 1e-9; }

double Ray::distance(Point p) const {
  if (along(p) < 0) return std::hypot(p.x - base.x, p.y - base.y);
  return std::abs(across(p));
}

// ---------------------------------------------------------------- Levin-Gu

namespace {

struct DecoEdge {
  SiteId q, q2;
  int eps;
};

// Triangular-lattice edges joining the two vertex rows adjacent to L, with
// along-coordinate of the midpoint in [lo, hi).
std::vector<DecoEdge> decoration_edges(const Ray& r, double lo, double hi) {
  auto in_band = [&](SiteId v) { return near(std::abs(r.across(site_point(v))), 0.5); };
  int reach = int(std::ceil(std::max(std::abs(lo), std::abs(hi)))) + 3;
  int cx = int(std::floor(r.base.x)), cy = int(std::floor(r.base.y));
  std::vector<DecoEdge> out;
  for (int x = cx - reach; x <= cx + reach; ++x)
    for (int y = cy - reach; y <= cy + reach; ++y) {
      auto q = SiteId::vertex(x, y);
      if (!in_band(q)) continue;
      for (auto q2 : tri::ring(q)) {
        if (!(q < q2) || !in_band(q2)) continue;
        Point a = site_point(q), b = site_point(q2);
        double t = r.along({(a.x + b.x) / 2, (a.y + b.y) / 2});
        if (t < lo - 1e-9 || t >= hi - 1e-9) continue;
        bool in1 = r.right_of_line(a), in2 = r.right_of_line(b);
        int c1 = tri::color(q), c2 = tri::color(q2);
        int missing = 3 - c1 - c2;
        int eps = 0;
        if (missing == 1) eps = (c1 == 0 ? in1 : in2) ? 1 : 0;
        else if (missing == 2) eps = in1 != in2 ? 1 : 0;
        out.push_back({q, q2, eps});
      }
    }
  return out;
}

}  // namespace

CliffordWord levin_gu_decoration(const Ray& r, double lo, double hi) {
  CliffordWord w;
  for (auto& e : decoration_edges(r, lo, hi)) {
    auto zz = pz(e.q) * pz(e.q2);
    w.append(rot(e.eps ? zz : -zz));
    w.add_phase(1);
  }
  return w;
}

ConjugationProgram levin_gu_line_program(const Ray& r, int depth) {
  auto p = ConjugationProgram::symmetry([r](SiteId v) { return r.right_of_line(site_point(v)); }, "beta^r(L)");
  p.stages.push_back({Stage::conj, levin_gu_decoration(r, -depth, depth), nullptr, "L"});
  p.name = "alpha^L";
  return p;
}

CliffordWord levin_gu_line_product(const Ray& r, const Lattice& lat) {
  CliffordWord w;
  for (auto v : lat.vertices())
    if (r.right_of_line(site_point(v)) && term_fits(ModelId::levin_gu, TermKind::B_lg, v, lat))
      w.append(term(ModelId::levin_gu, TermKind::B_lg, v, lat));
  return w;
}

ConjugationProgram levin_gu_defect_program(const DualPath& gamma, int depth) {
  Ray r = Ray::from_path(gamma);
  auto p = ConjugationProgram::symmetry([r](SiteId v) { return r.right_of_line(site_point(v)); }, "beta^r(L)");
  p.stages.push_back({Stage::conj, levin_gu_decoration(r, -depth, 0), nullptr, "gamma'"});
  p.name = "g";
  return p;
}

ScalarPauli levin_gu_defect_square(const DualPath& gamma, int depth) {
  auto a = levin_gu_defect_program(gamma, depth);
  auto c = collapse(compose(a, a));
  auto sp = scalar_pauli_decompose(c.word);
  if (!sp) throw std::logic_error("defect square is not a scalar times a Pauli");
  return *sp;
}

std::pair<SiteId, SiteId> levin_gu_defect_end(const DualPath& gamma) {
  Ray r = Ray::from_path(gamma);
  std::optional<SiteId> in, out;
  auto better = [&](std::optional<SiteId>& cur, SiteId v) {
    if (!cur || r.along(site_point(v)) > r.along(site_point(*cur))) cur = v;
  };
  for (auto& e : decoration_edges(r, -4, 0))
    for (auto v : {e.q, e.q2}) better(r.right_of_line(site_point(v)) ? in : out, v);
  return {*in, *out};
}

CliffordWord levin_gu_twisted_term(const DualPath& gamma, int depth, SiteId v, const Lattice& lat) {
  return levin_gu_defect_program(gamma, depth).inverse().apply(term(ModelId::levin_gu, TermKind::B_lg, v, lat));
}

// ---------------------------------------------------------------- SET

DualPath ray_complement(const DualPath& gamma_bar, int depth) {
  Ray r = Ray::from_path(gamma_bar);
  return DualPath::line({r.base.x - depth * r.dx, r.base.y - depth * r.dy}, r.base);
}

ConjugationProgram set_defect_program(const DualPath& gamma_bar, int depth) {
  Ray r = Ray::from_path(gamma_bar);
  auto p = ConjugationProgram::symmetry([r](SiteId v) { return r.right_of_line(site_point(v)); }, "beta^r(L)");
  p.stages.push_back({Stage::conj, sigma_erasure(ray_complement(gamma_bar, depth)), nullptr, "eta"});
  p.name = "1^sigma";
  return p;
}

DualPath SetGeometry::defect_ray() const {
  double x = origin.x() + 0.5, y = origin.y() + 0.5;
  return DualPath::line({x, y}, {x, y + 1});
}

DualPath SetGeometry::eta() const { return ray_complement(defect_ray(), depth); }

std::vector<SiteId> SetGeometry::gamma_vertices() const {
  std::vector<SiteId> vs;
  for (int k = 0; k <= depth; ++k) vs.push_back(SiteId::vertex(origin.x(), origin.y() - k));
  return vs;
}

bool SetGeometry::in_r(SiteId v) const { return v.x() > origin.x(); }

DualPath SetGeometry::xi(int N) const {
  double x = origin.x() + 0.5, y = origin.y() + 0.5;
  return {{{x, y}, {x, y - N}, {x - 5, y - N}, {x - 5, y}}, false};
}

std::vector<SiteId> SetGeometry::region_A(int N) const {
  std::vector<SiteId> vs;
  for (int x = origin.x() - 4; x <= origin.x(); ++x)
    for (int y = origin.y() - N + 1; y <= origin.y() + 2; ++y) vs.push_back(SiteId::vertex(x, y));
  std::sort(vs.begin(), vs.end());
  return vs;
}

std::vector<SiteId> SetGeometry::zeta(int N) const {
  int x0 = origin.x(), y0 = origin.y();
  std::vector<SiteId> vs;
  for (int k = 0; k <= N; ++k) vs.push_back(SiteId::vertex(x0, y0 - k));
  for (int k = 1; k <= 5; ++k) vs.push_back(SiteId::vertex(x0 - k, y0 - N));
  for (int k = N - 1; k >= 0; --k) vs.push_back(SiteId::vertex(x0 - 5, y0 - k));
  return vs;
}

const std::vector<std::string> kSetLabels = {"1",       "eps",       "m",       "psi",
                                             "1^sigma", "eps^sigma", "m^sigma", "psi^sigma"};

bool is_sigma_label(const std::string& label) {
  return label.size() > 6 && label.substr(label.size() - 6) == "^sigma";
}

std::string anyon_part(const std::string& label) {
  return is_sigma_label(label) ? label.substr(0, label.size() - 6) : label;
}

ConjugationProgram set_sector_program(const std::string& label, const SetGeometry& g) {
  if (std::find(kSetLabels.begin(), kSetLabels.end(), label) == kSetLabels.end())
    throw std::invalid_argument("unknown SET label '" + label + "'");
  ConjugationProgram p;
  auto a = anyon_part(label);
  if (a == "1") p = ConjugationProgram::identity();
  else if (a == "eps") p = ConjugationProgram::conj(eps_tilde_string(g.gamma_vertices()), "eps", "gamma");
  else if (a == "m") p = ConjugationProgram::conj(m_string(g.eta()), "m", "eta");
  else p = compose(set_sector_program("eps", g), set_sector_program("m", g));
  if (is_sigma_label(label)) p = compose(set_defect_program(g.defect_ray(), g.depth), p);
  p.name = label;
  return p;
}

TransportKind parse_transport_kind(const std::string& s) {
  if (s == "sigma") return TransportKind::sigma;
  if (s == "m") return TransportKind::m;
  if (s == "eps" || s == "epsilon") return TransportKind::eps;
  if (s == "psi") return TransportKind::psi;
  throw std::invalid_argument("unknown transport kind '" + s + "'");
}

CliffordWord transport_unitary(TransportKind k, int N, const SetGeometry& g) {
  if (N < 1 || N >= g.depth) throw std::invalid_argument("transport depth out of range");
  switch (k) {
    case TransportKind::sigma: {
      auto w = sigma_erasure(g.xi(N));
      w.append(symmetry_unitary(g.region_A(N)));
      return w;
    }
    case TransportKind::m: return m_string(g.xi(N));
    case TransportKind::eps: return eps_tilde_string(g.zeta(N));
    case TransportKind::psi: return transport_unitary(TransportKind::eps, N, g) * transport_unitary(TransportKind::m, N, g);
  }
  throw std::invalid_argument("bad transport kind");
}

CliffordWord sector_transport(const std::string& label, int N, const SetGeometry& g) {
  auto a = anyon_part(label);
  CliffordWord ua;
  if (a != "1") ua = transport_unitary(parse_transport_kind(a), N, g);
  if (!is_sigma_label(label)) return ua;
  return transport_unitary(TransportKind::sigma, N, g) * set_sector_program("1^sigma", g).apply(ua);
}

TransportFamily transport_family(TransportKind k, const std::vector<int>& Ns, const SetGeometry& g) {
  TransportFamily f{k, Ns, {}};
  for (int N : Ns) f.U.push_back(transport_unitary(k, N, g));
  return f;
}

// ---------------------------------------------------------------- audits

namespace {

bool interior(const std::vector<SiteId>& sup, const Lattice& lat, int margin) {
  for (auto s : sup)
    if (!lat.contains(s) || lat.boundary_distance(s) < margin) return false;
  return true;
}

double ray_distance(const Ray& r, const std::vector<SiteId>& sup) {
  double d = 1e18;
  for (auto s : sup) d = std::min(d, r.distance(site_point(s)));
  return d;
}

bool overlaps(const std::vector<SiteId>& a, const std::vector<SiteId>& b) {
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return true;
    a[i] < b[j] ? ++i : ++j;
  }
  return false;
}

bool matches_term(const CliffordWord& w, const Term& t, const Lattice& lat) {
  if (equal_including_phase(w, t.word)) return true;
  if (t.kind != TermKind::Q) return false;
  return equal_including_phase(w, term(ModelId::set_toric_code, TermKind::A, t.site, lat) * t.word);
}

}  // namespace

std::vector<DefectHamiltonianTerm> defect_terms(const ConjugationProgram& program, ModelId m, const Lattice& lat,
                                                int margin) {
  auto inv = program.inverse();
  std::vector<DefectHamiltonianTerm> out;
  for (auto& t : hamiltonian_terms(m, lat))
    if (interior(t.word.support(), lat, margin)) out.push_back({t, inv.apply(t.word)});
  return out;
}

AuditReport defect_hamiltonian_audit(const ConjugationProgram& program, ModelId m, const Lattice& lat,
                                     const DualPath& gamma, int margin, double range) {
  AuditReport rep;
  rep.name = "defect-hamiltonian/" + model_name(m);
  Ray r = Ray::from_path(gamma);
  auto terms = defect_terms(program, m, lat, margin);
  std::vector<std::vector<SiteId>> sup;
  for (auto& t : terms) sup.push_back(t.twisted.support());
  for (size_t i = 0; i < terms.size(); ++i) {
    auto& t = terms[i];
    auto nm = t.base.name();
    rep.expect(equal_including_phase(t.twisted, t.twisted.inverse()), "hermitian " + nm);
    rep.expect(equal_including_phase(t.twisted * t.twisted, CliffordWord()), "involutive " + nm);
    if (ray_distance(r, t.base.word.support()) > range)
      rep.expect(matches_term(t.twisted, t.base, lat), "untwisted away from the ray " + nm);
    for (size_t j = i + 1; j < terms.size(); ++j) {
      if (!overlaps(sup[i], sup[j])) continue;
      rep.expect(equal_including_phase(t.twisted * terms[j].twisted, terms[j].twisted * t.twisted),
                 "commute " + nm + " " + terms[j].base.name());
    }
  }
  return rep;
}

AuditReport erasure_audit(const ConjugationProgram& program, const Lattice& lat, const DualPath& gamma_bar,
                          int margin, double range) {
  AuditReport rep;
  rep.name = "erasure";
  Ray r = Ray::from_path(gamma_bar);
  for (auto& t : hamiltonian_terms(ModelId::set_toric_code, lat)) {
    auto sup = t.word.support();
    if (!interior(sup, lat, margin) || ray_distance(r, sup) <= range) continue;
    rep.expect(matches_term(program.apply(t.word), t, lat), "program fixes " + t.name());
  }
  return rep;
}

LocalizationReport localization_audit(const ConjugationProgram& program, const Cone& cone, Point origin, int g,
                                      const Lattice& lat, int margin) {
  LocalizationReport rep;
  SitePredicate right = [&](SiteId v) { return cone.right_of(site_point(v), origin); };
  for (auto s : lat.qubits()) {
    if (lat.boundary_distance(s) < margin || cone.contains(site_point(s))) continue;
    for (Letter l : {X, Z}) {
      auto q = PhasedPauli::single(s, l);
      auto want = g ? sym_on(right, q) : q;
      ++rep.checks;
      if (program.apply(q) != want) rep.discrepancies.insert(s);
    }
  }
  for (auto s : rep.discrepancies)
    if (lat.boundary_distance(s) < margin + 2) rep.bounded = false;
  return rep;
}

AuditReport stabilization_audit(const std::function<ConjugationProgram(int)>& family, int depth,
                                const std::vector<SiteId>& sites) {
  AuditReport rep;
  rep.name = "stabilization";
  auto a = family(depth), b = family(2 * depth);
  for (auto s : sites)
    for (Letter l : {X, Z}) {
      auto q = PhasedPauli::single(s, l);
      rep.expect(a.apply(q) == b.apply(q), "depth doubling on " + q.str());
    }
  return rep;
}

DualPath loop_around(const std::vector<SiteId>& vs, bool clockwise) {
  if (vs.empty()) throw std::invalid_argument("empty vertex set");
  int x0 = vs[0].x(), x1 = x0, y0 = vs[0].y(), y1 = y0;
  for (auto v : vs) {
    x0 = std::min(x0, v.x());
    x1 = std::max(x1, v.x());
    y0 = std::min(y0, v.y());
    y1 = std::max(y1, v.y());
  }
  if (size_t((x1 - x0 + 1) * (y1 - y0 + 1)) != std::set<SiteId>(vs.begin(), vs.end()).size())
    throw std::invalid_argument("vertex set must be a full rectangle");
  DualPath p{{{x0 - 0.5, y1 + 0.5}, {x1 + 0.5, y1 + 0.5}, {x1 + 0.5, y0 - 0.5}, {x0 - 0.5, y0 - 0.5}}, true};
  return clockwise ? p : p.reversed();
}

double boundary_string_deviation(const std::vector<SiteId>& S, bool clockwise) {
  int x0 = S[0].x(), y0 = S[0].y();
  for (auto v : S) {
    x0 = std::min(x0, v.x());
    y0 = std::min(y0, v.y());
  }
  Lattice lat(LatticeKind::square_ve, Topology::make_window(x0 - 2, y0 - 2, 8, 8));
  std::set<SiteId> sites;
  CliffordWord qs;
  for (auto v : S) {
    sites.insert(v);
    for (auto e : sq::incident_edges(v)) sites.insert(e);
    qs.append(term(ModelId::set_toric_code, TermKind::Q, v, lat));
  }
  std::vector<SiteId> sup(sites.begin(), sites.end());
  auto rhs_word = sigma_erasure(loop_around(S, clockwise));
  rhs_word.append(symmetry_unitary(S));
  DenseOp P = DenseOp::identity(sup);
  for (auto v : S) {
    auto a = materialize(term(ModelId::set_toric_code, TermKind::A, v, lat), sup);
    P.m = P.m * (Mat::Identity(a.m.rows(), a.m.cols()) + a.m) / 2.0;
  }
  auto lhs = multiply(P, materialize(qs, sup));
  auto rhs = multiply(P, materialize(rhs_word, sup));
  return max_deviation(lhs, rhs);
}

CliffordWord pizza_operator(const DualPath& xi1, const DualPath& xi2, const std::vector<SiteId>& S) {
  auto w = sigma_erasure(xi1) * sigma_erasure(xi2).inverse();
  w.append(symmetry_unitary(S));
  return w;
}

}  // namespace qd
