#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qd/defects.hpp"
#include "qd/dense.hpp"

using namespace qd;

namespace {

PhasedPauli px(SiteId s) { return PhasedPauli::single(s, X); }
PhasedPauli pz(SiteId s) { return PhasedPauli::single(s, Z); }

Lattice tri_window(int x0, int y0, int w, int h) {
  return Lattice(LatticeKind::triangular, Topology::make_window(x0, y0, w, h));
}

Lattice square(int x0, int y0, int w, int h) {
  return Lattice(LatticeKind::square_ve, Topology::make_window(x0, y0, w, h));
}

std::vector<PhasedPauli> generators_near(const Lattice& lat, Point c, int r) {
  std::vector<PhasedPauli> out;
  for (auto s : lat.qubits()) {
    Point p = site_point(s);
    if (std::abs(p.x - c.x) <= r && std::abs(p.y - c.y) <= r) {
      out.push_back(px(s));
      out.push_back(pz(s));
    }
  }
  return out;
}

bool z_type(const PhasedPauli& p) {
  for (auto& [c, l] : p.ops())
    if (l != Z) return false;
  return true;
}

const DualPath kLgRay = DualPath::line({0.5, 0.75}, {0.5, 1.75});

}  // namespace

// ---------------------------------------------------------------- Levin-Gu decoration

TEST(LevinGuDecoration, MatchesBruteForceProductAllOrientations) {
  auto lat = tri_window(-12, -12, 25, 25);
  const int dirs[4][2] = {{0, 1}, {0, -1}, {1, 0}, {-1, 0}};
  for (auto& d : dirs) {
    Ray r;
    r.base = {0.5, 0.5};
    r.dx = d[0];
    r.dy = d[1];
    auto brute = levin_gu_line_product(r, lat);
    auto prog = levin_gu_line_program(r, 10);
    int bad = 0;
    for (auto& q : generators_near(lat, r.base, 3))
      if (ad(brute, q) != prog.apply(q)) ++bad;
    EXPECT_EQ(bad, 0) << "direction " << d[0] << "," << d[1];
  }
}

TEST(LevinGuDecoration, FlagsFollowColouring) {
  Ray r;
  r.base = {0.5, 0.5};
  auto w = levin_gu_decoration(r, -3, 3);
  // Every factor is omega * e^{+-i pi/4 ZZ} on a pair of band vertices.
  EXPECT_EQ(w.size(), 24u);
  EXPECT_EQ(w.phase(), 24 % 8);
  for (auto& f : w.factors()) {
    auto* rq = std::get_if<QuarterRotation>(&f);
    ASSERT_NE(rq, nullptr);
    EXPECT_EQ(rq->axis.weight(), 2u);
    for (auto s : rq->axis.support()) EXPECT_TRUE(s.x() == 0 || s.x() == 1);
  }
}

TEST(LevinGuDefect, TwistedTermsAwayFromRayAreUntouched) {
  auto lat = tri_window(-10, -10, 21, 21);
  auto prog = levin_gu_defect_program(kLgRay, 30).inverse();
  Ray r = Ray::from_path(kLgRay);
  size_t checked = 0;
  for (auto v : lat.vertices()) {
    if (!term_fits(ModelId::levin_gu, TermKind::B_lg, v, lat)) continue;
    if (r.distance(site_point(v)) <= 2) continue;
    auto b = term(ModelId::levin_gu, TermKind::B_lg, v, lat);
    EXPECT_TRUE(equal_including_phase(prog.apply(b), b)) << v.str();
    ++checked;
  }
  EXPECT_GT(checked, 250u);
}

TEST(LevinGuDefect, TwistedTermsOnRayAreRestrictedSymmetry) {
  auto lat = tri_window(-10, -10, 21, 21);
  auto inv = levin_gu_defect_program(kLgRay, 30).inverse();
  Ray r = Ray::from_path(kLgRay);
  auto half = ConjugationProgram::symmetry([r](SiteId v) { return r.right_of_line(site_point(v)); });
  for (int y = 3; y <= 8; ++y)
    for (int x : {0, 1}) {
      auto v = SiteId::vertex(x, y);
      auto b = term(ModelId::levin_gu, TermKind::B_lg, v, lat);
      auto hat = inv.apply(b);
      EXPECT_TRUE(equal_including_phase(hat, half.apply(b))) << v.str();
      auto ratio = scalar_pauli_decompose(hat * b.inverse());
      ASSERT_TRUE(ratio.has_value());
      EXPECT_FALSE(ratio->pauli.is_scalar()) << v.str();
      EXPECT_TRUE(z_type(ratio->pauli)) << v.str();
    }
}

TEST(LevinGuDefect, SquareIsEndpointZZWithPhaseZero) {
  auto sq = levin_gu_defect_square(kLgRay, 20);
  auto [in, out] = levin_gu_defect_end(kLgRay);
  EXPECT_EQ(in, SiteId::vertex(1, 1));
  EXPECT_EQ(out, SiteId::vertex(0, 1));
  std::vector<SiteId> top;
  for (auto s : sq.pauli.support())
    if (s.y() > -10) top.push_back(s);
  EXPECT_EQ(sq.pauli.restricted(top), pz(in) * pz(out));
  EXPECT_EQ(sq.phase, 0);
  EXPECT_TRUE(z_type(sq.pauli));
  EXPECT_EQ(sq.pauli.weight(), 4u);  // the truncation end contributes the other pair
}

TEST(LevinGuDefect, SymmetryFlipsTheSquare) {
  auto [in, out] = levin_gu_defect_end(kLgRay);
  auto omega = pz(in) * pz(out);
  auto prog = levin_gu_defect_program(kLgRay, 20);
  EXPECT_EQ(prog.apply(omega), -omega);
}

TEST(LevinGuDefect, HamiltonianAudit10x10) {
  auto lat = tri_window(-5, -5, 10, 10);
  DualPath ray = DualPath::line({-0.5, 0.75}, {-0.5, 1.75});
  auto rep = defect_hamiltonian_audit(levin_gu_defect_program(ray, 30), ModelId::levin_gu, lat, ray, 0, 2.0);
  EXPECT_TRUE(rep.ok()) << (rep.failures.empty() ? "" : rep.failures.front());
  EXPECT_GT(rep.checks, 200u);
}

TEST(LevinGuDefect, Localization) {
  auto lat = tri_window(-8, -8, 17, 17);
  Cone cone{{0.5, 0.75}, -std::numbers::pi / 2, std::numbers::pi / 2};
  auto rep = localization_audit(levin_gu_defect_program(kLgRay, 30), cone, {0.5, 0.75}, 1, lat, 2);
  EXPECT_TRUE(rep.ok());
  EXPECT_GT(rep.checks, 200u);
  EXPECT_LE(rep.discrepancies.size(), 6u);
  for (auto s : rep.discrepancies) EXPECT_LE(std::abs(s.y()), 3) << s.str();
}

TEST(LevinGuDefect, LocalizationOfIdentityIsEmpty) {
  auto lat = tri_window(-5, -5, 11, 11);
  Cone cone{{0.5, 0.5}, -std::numbers::pi / 2, std::numbers::pi / 2};
  auto rep = localization_audit(ConjugationProgram::identity(), cone, {0.5, 0.5}, 0, lat, 1);
  EXPECT_TRUE(rep.discrepancies.empty());
  EXPECT_TRUE(rep.ok());
}

TEST(LevinGuDefect, Stabilization) {
  auto lat = tri_window(-4, -4, 9, 9);
  auto rep = stabilization_audit([](int d) { return levin_gu_defect_program(kLgRay, d); }, 8, lat.qubits());
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.checks, 2 * lat.qubits().size());
}

TEST(LevinGuDefect, PathIndependenceOutsideFiniteRegion) {
  auto lat = tri_window(-8, -8, 17, 17);
  auto a = levin_gu_defect_program(kLgRay, 30);
  auto b = levin_gu_defect_program(DualPath::line({0.5, 3.75}, {0.5, 4.75}), 30);
  for (auto s : lat.qubits())
    for (Letter l : {X, Z}) {
      auto q = PhasedPauli::single(s, l);
      if (a.apply(q) != b.apply(q)) {
        EXPECT_TRUE(s.x() >= -1 && s.x() <= 2 && s.y() >= 0 && s.y() <= 5) << s.str();
      }
    }
}

// ---------------------------------------------------------------- program algebra

TEST(ConjugationProgram, InverseComposeGammaCollapse) {
  SetGeometry g;
  g.depth = 10;
  auto lat = square(-4, -4, 9, 9);
  std::mt19937 rng(7);
  auto qs = lat.qubits();
  for (auto& label : kSetLabels) {
    auto p = set_sector_program(label, g);
    auto inv = p.inverse();
    auto c = collapse(p);
    auto gg = gamma_g(gamma_g(p));
    for (int k = 0; k < 40; ++k) {
      auto q = PhasedPauli::single(qs[rng() % qs.size()], rng() % 2 ? X : Z);
      EXPECT_EQ(inv.apply(p.apply(q)), q);
      EXPECT_EQ(gg.apply(q), p.apply(q));
      auto via = ad(c.word, c.regions.empty() || !c.in_region(q.support()[0]) ? q : beta(q));
      EXPECT_EQ(via, p.apply(q)) << label << " " << q.str();
    }
  }
}

TEST(ConjugationProgram, WordApplicationMatchesConjugation) {
  SetGeometry g;
  g.depth = 8;
  auto p = set_sector_program("eps^sigma", g);
  auto w = transport_unitary(TransportKind::sigma, 3, g);
  auto img = p.apply(w);
  for (auto s : w.support())
    for (Letter l : {X, Z}) {
      auto q = PhasedPauli::single(s, l);
      EXPECT_EQ(ad(img, p.apply(q)), p.apply(ad(w, q)));
    }
}

TEST(InnerWitness, DetectsStringsAndEndpoints) {
  SetGeometry g;
  g.depth = 12;
  auto lat = square(-5, -5, 11, 11);
  auto ball = match_ball(lat, {0, 0}, 4);
  auto one = ConjugationProgram::identity();
  auto eps = set_sector_program("eps", g);
  EXPECT_FALSE(inner_witness(eps, one, ball).has_value());
  auto ee = inner_witness(compose(eps, eps), one, ball);
  ASSERT_TRUE(ee.has_value());
  EXPECT_TRUE(ee->is_scalar());
  auto v = inner_witness(eps, gamma_g(eps), ball);
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(*v, pz(g.origin));
  auto ss = inner_witness(compose(set_sector_program("1^sigma", g), set_sector_program("1^sigma", g)),
                          set_sector_program("m", g), ball);
  ASSERT_TRUE(ss.has_value());
  EXPECT_TRUE(ss->is_scalar());
}

// ---------------------------------------------------------------- SET defects

TEST(SetDefect, ErasureAudit8x8) {
  auto lat = square(0, 0, 8, 8);
  DualPath ray = DualPath::line({3.5, 3.5}, {3.5, 4.5});
  auto rep = erasure_audit(set_defect_program(ray, 16), lat, ray, 0, 1.5);
  EXPECT_TRUE(rep.ok()) << (rep.failures.empty() ? "" : rep.failures.front());
  EXPECT_GT(rep.checks, 50u);
}

TEST(SetDefect, ErasureFailsWithoutTheString) {
  auto lat = square(0, 0, 8, 8);
  DualPath ray = DualPath::line({3.5, 3.5}, {3.5, 4.5});
  Ray r = Ray::from_path(ray);
  auto bare = ConjugationProgram::symmetry([r](SiteId v) { return r.right_of_line(site_point(v)); });
  EXPECT_FALSE(erasure_audit(bare, lat, ray, 0, 1.5).ok());
}

TEST(SetDefect, SquareIsMString) {
  SetGeometry g;
  g.depth = 12;
  auto lat = square(-6, -6, 13, 13);
  auto s = set_sector_program("1^sigma", g);
  auto ss = compose(s, s);
  auto m = set_sector_program("m", g);
  for (auto q : lat.qubits())
    for (Letter l : {X, Z}) {
      auto p = PhasedPauli::single(q, l);
      EXPECT_EQ(ss.apply(p), m.apply(p)) << p.str();
    }
}

TEST(SetDefect, HamiltonianAudit) {
  auto lat = square(0, 0, 7, 7);
  DualPath ray = DualPath::line({3.5, 3.5}, {3.5, 4.5});
  auto rep = defect_hamiltonian_audit(set_defect_program(ray, 16), ModelId::set_toric_code, lat, ray, 0, 1.5);
  EXPECT_TRUE(rep.ok()) << (rep.failures.empty() ? "" : rep.failures.front());
  EXPECT_GT(rep.checks, 300u);
}

TEST(SetDefect, Localization) {
  SetGeometry g;
  g.depth = 20;
  auto lat = square(-8, -8, 17, 17);
  Cone cone{{0.5, 1.0}, -std::numbers::pi / 2, std::numbers::pi / 2};
  auto rep = localization_audit(set_sector_program("1^sigma", g), cone, {0.5, 1.0}, 1, lat, 2);
  EXPECT_TRUE(rep.ok());
  EXPECT_LE(rep.discrepancies.size(), 6u);
  for (auto s : rep.discrepancies) EXPECT_LE(std::abs(s.y()), 3) << s.str();
}

TEST(SetDefect, Stabilization) {
  auto lat = square(-4, -4, 9, 9);
  for (auto& label : kSetLabels) {
    auto rep = stabilization_audit(
        [&](int d) {
          SetGeometry g;
          g.depth = d;
          return set_sector_program(label, g);
        },
        8, lat.qubits());
    EXPECT_TRUE(rep.ok()) << label;
  }
}

TEST(SetDefect, RejectsSkewRay) {
  EXPECT_THROW(set_defect_program(DualPath::line({0.5, 0.5}, {1.5, 1.5}), 5), std::invalid_argument);
  EXPECT_THROW(set_sector_program("sigma", SetGeometry{}), std::invalid_argument);
}

// ---------------------------------------------------------------- transport

TEST(Transport, MStringAlongXi2) {
  SetGeometry g;
  auto u = transport_unitary(TransportKind::m, 2, g);
  auto sp = scalar_pauli_decompose(u);
  ASSERT_TRUE(sp.has_value());
  EXPECT_EQ(sp->phase, 0);
  std::vector<SiteId> edges;
  for (int y : {-1, 0}) edges.push_back(SiteId::hedge(0, y));
  for (int x = -4; x <= 0; ++x) edges.push_back(SiteId::vedge(x, -2));
  for (int y : {-1, 0}) edges.push_back(SiteId::hedge(-5, y));
  EXPECT_EQ(sp->pauli, PhasedPauli::product(edges, X));
}

TEST(Transport, EpsilonActsOnSigmaTransporterAsMinusTauZ0) {
  SetGeometry g;
  for (int N : {2, 3, 4}) {
    auto u = transport_unitary(TransportKind::sigma, N, g).inverse();
    auto gamma = g.gamma_vertices();
    std::vector<SiteId> top(gamma.begin(), gamma.begin() + N + 1);
    auto lhs = ad(eps_tilde_string(top), u);
    CliffordWord rhs(-pz(g.origin));
    rhs.append(u);
    EXPECT_TRUE(equal_including_phase(lhs, rhs)) << "N=" << N;
  }
}

TEST(Transport, SupportsGrowLinearly) {
  SetGeometry g;
  for (auto k : {TransportKind::sigma, TransportKind::m, TransportKind::eps, TransportKind::psi}) {
    auto f = transport_family(k, {2, 3, 4, 5, 6}, g);
    std::vector<long> sz;
    for (auto& u : f.U) sz.push_back(long(u.support().size()));
    for (size_t i = 2; i < sz.size(); ++i) EXPECT_EQ(sz[i] - sz[i - 1], sz[1] - sz[0]);
    EXPECT_GT(sz[1], sz[0]);
    for (auto& u : f.U) EXPECT_TRUE(equal_including_phase(u * u.inverse(), CliffordWord()));
  }
}

TEST(Transport, CompositeSectorTransport) {
  SetGeometry g;
  auto u = sector_transport("1^sigma", 3, g);
  EXPECT_TRUE(equal_including_phase(u, transport_unitary(TransportKind::sigma, 3, g)));
  EXPECT_EQ(sector_transport("1", 3, g).size(), 0u);
  EXPECT_THROW(transport_unitary(TransportKind::m, 0, g), std::invalid_argument);
}

// ---------------------------------------------------------------- boundary strings

TEST(BoundaryString, SingleAndPairBothOrientations) {
  std::vector<std::vector<SiteId>> sets = {{SiteId::vertex(0, 0)},
                                           {SiteId::vertex(0, 0), SiteId::vertex(1, 0)},
                                           {SiteId::vertex(0, 0), SiteId::vertex(0, 1)}};
  for (auto& S : sets)
    for (bool cw : {true, false}) EXPECT_LT(boundary_string_deviation(S, cw), 1e-9) << S.size() << " " << cw;
}

TEST(BoundaryString, FailsWithoutTheProjector) {
  auto S = std::vector<SiteId>{SiteId::vertex(0, 0)};
  auto w = sigma_erasure(loop_around(S));
  w.append(symmetry_unitary(S));
  Lattice lat = square(-2, -2, 5, 5);
  EXPECT_FALSE(equal_up_to_phase(w, term(ModelId::set_toric_code, TermKind::Q, S[0], lat)));
}

TEST(BoundaryString, PizzaWordIsLoopErasure) {
  auto S = std::vector<SiteId>{SiteId::vertex(0, 0)};
  DualPath xi1{{{-0.5, -0.5}, {-0.5, 0.5}, {0.5, 0.5}}, false};
  DualPath xi2{{{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}}, false};
  auto pizza = pizza_operator(xi1, xi2, S);
  auto loop = sigma_erasure(DualPath{{{-0.5, -0.5}, {-0.5, 0.5}, {0.5, 0.5}, {0.5, -0.5}}, true});
  loop.append(symmetry_unitary(S));
  EXPECT_TRUE(equal_including_phase(pizza, loop));
}

TEST(BoundaryString, LoopAroundRejectsNonRectangles) {
  EXPECT_THROW(loop_around({SiteId::vertex(0, 0), SiteId::vertex(1, 1)}), std::invalid_argument);
}
