#include <gtest/gtest.h>

#include <random>

#include "qd/dense.hpp"
#include "qd/models.hpp"

using namespace qd;

namespace {

PhasedPauli px(SiteId s) { return PhasedPauli::single(s, X); }
PhasedPauli pz(SiteId s) { return PhasedPauli::single(s, Z); }

Lattice square(int x0, int y0, int w, int h) {
  return Lattice(LatticeKind::square_ve, Topology::make_window(x0, y0, w, h));
}

std::vector<SiteId> random_walk(std::mt19937& rng, SiteId start, int steps) {
  std::vector<SiteId> vs{start};
  std::set<SiteId> seen{start};
  const int dx[4] = {1, -1, 0, 0}, dy[4] = {0, 0, 1, -1};
  while (int(vs.size()) <= steps) {
    bool moved = false;
    for (int tries = 0; tries < 16 && !moved; ++tries) {
      int d = int(rng() % 4);
      auto n = SiteId::vertex(vs.back().x() + dx[d], vs.back().y() + dy[d]);
      if (seen.count(n)) continue;
      vs.push_back(n);
      seen.insert(n);
      moved = true;
    }
    if (!moved) break;
  }
  return vs;
}

DualPath random_dual_walk(std::mt19937& rng, Point start, int steps) {
  DualPath p;
  p.pts.push_back(start);
  const double dx[4] = {1, -1, 0, 0}, dy[4] = {0, 0, 1, -1};
  auto used = [&](Point q) {
    for (auto& r : p.pts)
      if (std::abs(r.x - q.x) < 1e-9 && std::abs(r.y - q.y) < 1e-9) return true;
    return false;
  };
  for (int s = 0; s < steps; ++s) {
    bool moved = false;
    for (int tries = 0; tries < 16 && !moved; ++tries) {
      int d = int(rng() % 4);
      Point q{p.pts.back().x + dx[d], p.pts.back().y + dy[d]};
      if (used(q)) continue;
      p.pts.push_back(q);
      moved = true;
    }
    if (!moved) break;
  }
  return p;
}

// Proper crossings between a primal unit-step polyline and a dual one.
int geometric_crossings(const std::vector<SiteId>& prim, const DualPath& dual) {
  int c = 0;
  for (size_t i = 0; i + 1 < prim.size(); ++i) {
    Point a{double(prim[i].x()), double(prim[i].y())}, b{double(prim[i + 1].x()), double(prim[i + 1].y())};
    for (size_t j = 0; j + 1 < dual.pts.size(); ++j) {
      Point p = dual.pts[j], q = dual.pts[j + 1];
      auto cross = [](Point o, Point u, Point v) { return (u.x - o.x) * (v.y - o.y) - (u.y - o.y) * (v.x - o.x); };
      double d1 = cross(a, b, p), d2 = cross(a, b, q), d3 = cross(p, q, a), d4 = cross(p, q, b);
      if (d1 * d2 < 0 && d3 * d4 < 0) ++c;
    }
  }
  return c;
}

PhasedPauli as_pauli(const CliffordWord& w) {
  auto sp = scalar_pauli_decompose(w);
  EXPECT_TRUE(sp.has_value());
  return sp ? sp->pauli.with_phase(sp->phase) : PhasedPauli();
}

}  // namespace

TEST(Term, ToricVertexTermIsFourEdgeXString) {
  auto lat = square(-3, -3, 7, 7);
  auto v = SiteId::vertex(0, 0);
  auto a = term(ModelId::toric_code_ancilla, TermKind::A, v, lat);
  auto es = sq::incident_edges(v);
  EXPECT_TRUE(equal_including_phase(a, CliffordWord(PhasedPauli::product({es.begin(), es.end()}, X))));
  EXPECT_EQ(a.support().size(), 4u);
}

TEST(Term, LevinGuPlaquetteStructure) {
  Lattice lat(LatticeKind::triangular, Topology::make_window(-3, -3, 7, 7));
  auto b = term(ModelId::levin_gu, TermKind::B_lg, SiteId::vertex(0, 0), lat);
  EXPECT_EQ(b.size(), 7u);
  EXPECT_EQ(b.support().size(), 7u);
  EXPECT_TRUE(equal_including_phase(b * b, CliffordWord()));
  EXPECT_TRUE(equal_including_phase(b, b.inverse()));
}

TEST(Term, SetVertexTermSigns) {
  auto lat = square(-3, -3, 7, 7);
  auto v = SiteId::vertex(0, 0);
  auto q = term(ModelId::set_toric_code, TermKind::Q, v, lat);
  ASSERT_EQ(q.size(), 5u);
  EXPECT_EQ(std::get<PhasedPauli>(q.factors()[0]), px(v));
  auto es = sq::incident_edges(v);
  for (int i = 0; i < 4; ++i) {
    auto axis = std::get<QuarterRotation>(q.factors()[i + 1]).axis;
    auto base = pz(v) * px(es[i]);
    EXPECT_EQ(axis, sq::f_sign(es[i], v) > 0 ? -base : base);
  }
  EXPECT_TRUE(equal_including_phase(q * q, CliffordWord()));
}

TEST(Term, WrongSiteKindRejected) {
  auto lat = square(-3, -3, 7, 7);
  EXPECT_THROW(term(ModelId::set_toric_code, TermKind::A, SiteId::face(0, 0), lat), std::invalid_argument);
  EXPECT_THROW(term(ModelId::trivial_paramagnet, TermKind::B, SiteId::face(0, 0), lat), std::invalid_argument);
  EXPECT_FALSE(term_fits(ModelId::set_toric_code, TermKind::A, SiteId::vertex(-3, -3), lat));
}

TEST(Term, ModelNamesRoundTrip) {
  for (auto m : {ModelId::trivial_paramagnet, ModelId::levin_gu, ModelId::toric_code_ancilla, ModelId::set_toric_code})
    EXPECT_EQ(parse_model_id(model_name(m)), m);
  EXPECT_EQ(parse_model_id("levin_gu"), ModelId::levin_gu);
  EXPECT_THROW(parse_model_id("ising"), std::invalid_argument);
}

TEST(CommutingProjectorAudit, Paramagnet5x5) {
  Lattice lat(LatticeKind::triangular, Topology::make_window(5, 5));
  auto r = commuting_projector_audit(ModelId::trivial_paramagnet, lat);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.checks, 50u);
}

TEST(CommutingProjectorAudit, LevinGu8x8) {
  Lattice lat(LatticeKind::triangular, Topology::make_window(8, 8));
  auto r = commuting_projector_audit(ModelId::levin_gu, lat);
  EXPECT_TRUE(r.ok()) << (r.failures.empty() ? "" : r.failures.front());
  EXPECT_GT(r.checks, 150u);
}

TEST(CommutingProjectorAudit, SetToricCode6x6) {
  auto lat = square(0, 0, 6, 6);
  auto r = commuting_projector_audit(ModelId::set_toric_code, lat);
  EXPECT_TRUE(r.ok()) << (r.failures.empty() ? "" : r.failures.front());
  EXPECT_GT(r.checks, 200u);
}

TEST(CommutingProjectorAudit, ToricCodeAncilla) {
  auto r = commuting_projector_audit(ModelId::toric_code_ancilla, square(0, 0, 5, 5));
  EXPECT_TRUE(r.ok());
}

TEST(CommutingProjectorAudit, DetectsNonCommutingPair) {
  // Dropping the dressing from B~_f breaks commutation with Q_v.
  auto lat = square(-3, -3, 7, 7);
  auto b = term(ModelId::set_toric_code, TermKind::B, SiteId::face(0, 0), lat);
  auto q = term(ModelId::set_toric_code, TermKind::Q, SiteId::vertex(0, 0), lat);
  EXPECT_FALSE(equal_including_phase(b * q, q * b));
}

TEST(SymmetryAudit, AllModels) {
  Lattice tri(LatticeKind::triangular, Topology::make_window(6, 6));
  EXPECT_TRUE(symmetry_invariance_audit(ModelId::trivial_paramagnet, tri).ok());
  EXPECT_TRUE(symmetry_invariance_audit(ModelId::levin_gu, tri).ok());
  auto sq6 = square(0, 0, 6, 6);
  auto r = symmetry_invariance_audit(ModelId::set_toric_code, sq6);
  EXPECT_TRUE(r.ok()) << (r.failures.empty() ? "" : r.failures.front());
  EXPECT_TRUE(symmetry_invariance_audit(ModelId::toric_code_ancilla, sq6).ok());
}

TEST(SymmetryAudit, SetVertexTermPicksUpStar) {
  auto lat = square(-3, -3, 7, 7);
  auto v = SiteId::vertex(1, -1);
  auto q = term(ModelId::set_toric_code, TermKind::Q, v, lat);
  auto a = term(ModelId::set_toric_code, TermKind::A, v, lat);
  EXPECT_TRUE(equal_including_phase(beta(q), a * q));
  EXPECT_FALSE(equal_up_to_phase(beta(q), q));
}

TEST(SymmetryAction, Homomorphism) {
  auto s = symmetry(ModelId::set_toric_code);
  auto v = SiteId::vertex(2, 3);
  EXPECT_EQ(s.site_unitary(v, 0), PhasedPauli());
  EXPECT_EQ(s.site_unitary(v, 1), px(v));
  for (int g = 0; g < 2; ++g)
    for (int h = 0; h < 2; ++h)
      for (auto l : {X, Y, Z}) {
        auto q = PhasedPauli::single(v, l);
        auto lhs = conj_pauli(s.site_unitary(v, g), conj_pauli(s.site_unitary(v, h), q));
        EXPECT_EQ(lhs, conj_pauli(s.site_unitary(v, s.table[g][h]), q));
      }
  // Edges carry no symmetry.
  EXPECT_EQ(symmetry_unitary({SiteId::hedge(0, 0), v}), px(v));
}

TEST(RestrictedSymmetry, VertexTermsUnchanged) {
  auto lat = square(-4, -4, 9, 9);
  auto r = region_right_of(DualPath::line({0.5, 0}, {0.5, 1}), lat).sites;
  for (auto v : lat.vertices()) {
    if (!term_fits(ModelId::set_toric_code, TermKind::Q, v, lat)) continue;
    Term a{TermKind::A, v, term(ModelId::set_toric_code, TermKind::A, v, lat)};
    Term q{TermKind::Q, v, term(ModelId::set_toric_code, TermKind::Q, v, lat)};
    EXPECT_TRUE(equal_including_phase(restricted_symmetry_on_term(a, r), a.word));
    // On the projector (1 + A_v)/2 the factor A_v is absorbed.
    auto img = restricted_symmetry_on_term(q, r);
    EXPECT_TRUE(equal_including_phase(img, q.word) || equal_including_phase(img, a.word * q.word)) << v.str();
  }
}

// Every way a dual line can cut a face: straight through (2 directions) or
// turning inside it (4 corners), each in both orientations.
TEST(RestrictedSymmetry, BtildeCorrectionExhaustive) {
  auto lat = square(-5, -5, 11, 11);
  auto f = SiteId::face(0, 0);  // vertices (0,0)..(1,1), centre (0.5, 0.5)
  const double c = 0.5;
  std::vector<DualPath> lines = {
      DualPath::line({c, c - 5}, {c, c + 5}),
      DualPath::line({c - 5, c}, {c + 5, c}),
      DualPath{{{c, c - 5}, {c, c}, {c + 5, c}}, false},
      DualPath{{{c, c - 5}, {c, c}, {c - 5, c}}, false},
      DualPath{{{c, c + 5}, {c, c}, {c + 5, c}}, false},
      DualPath{{{c, c + 5}, {c, c}, {c - 5, c}}, false},
  };
  auto bt = term(ModelId::set_toric_code, TermKind::B_tilde, f, lat);
  auto es = sq::face_edges(f);
  int patterns = 0;
  for (auto& base : lines)
    for (bool rev : {false, true}) {
      auto L = rev ? base.reversed() : base;
      auto region = region_right_of(L, lat).sites;
      auto img = beta_restricted(region, bt);
      // Dual-line form: prod over face edges crossed by L of i p(e) X_e.
      PhasedPauli dual;
      for (auto& cr : crossed_edges(L))
        if (std::find(es.begin(), es.end(), cr.edge) != es.end())
          dual = dual * px(cr.edge).with_phase(crossing_sign(cr) > 0 ? 2 : 6);
      EXPECT_TRUE(equal_including_phase(img, btilde_correction(f, region) * bt)) << patterns;
      EXPECT_TRUE(equal_including_phase(img, CliffordWord(dual) * bt)) << patterns;
      ++patterns;
    }
  EXPECT_EQ(patterns, 12);
}

TEST(RestrictedSymmetry, BtildeCorrectionDenseOracle) {
  auto lat = square(-5, -5, 11, 11);
  auto f = SiteId::face(0, 0);
  auto bt = term(ModelId::set_toric_code, TermKind::B_tilde, f, lat);
  auto sup = bt.support();
  ASSERT_EQ(sup.size(), 8u);
  for (auto L : {DualPath::line({0.5, -1}, {0.5, 0}), DualPath::line({-1, 0.5}, {0, 0.5})}) {
    auto region = region_right_of(L, lat).sites;
    std::vector<SiteId> in;
    for (auto s : sup)
      if (region.count(s)) in.push_back(s);
    auto u = materialize(symmetry_unitary(in), sup);
    auto lhs = conj_dense(u, materialize(bt, sup));
    auto rhs = materialize(btilde_correction(f, region) * bt, sup);
    EXPECT_LE(max_deviation(lhs, rhs), kDenseTol);
  }
}

TEST(Strings, ContractibleLoopIsPlaquetteProduct) {
  auto lat = square(-4, -4, 9, 9);
  std::vector<SiteId> loop;
  for (int x = 0; x <= 2; ++x) loop.push_back(SiteId::vertex(x, 0));
  for (int y = 1; y <= 2; ++y) loop.push_back(SiteId::vertex(2, y));
  for (int x = 1; x >= 0; --x) loop.push_back(SiteId::vertex(x, 2));
  loop.push_back(SiteId::vertex(0, 1));
  loop.push_back(SiteId::vertex(0, 0));
  CliffordWord prod;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) prod = prod * term(ModelId::toric_code_ancilla, TermKind::B, SiteId::face(x, y), lat);
  EXPECT_TRUE(equal_including_phase(eps_string(loop), prod));
}

TEST(Strings, EpsTildeMatchesDenseEntangler) {
  auto lat = square(-5, -5, 11, 11);
  auto c = set_entangler(lat);
  std::mt19937 rng(7);
  for (int trial = 0; trial < 6; ++trial) {
    auto path = random_walk(rng, SiteId::vertex(0, 0), 1 + trial % 3);
    auto fz = as_pauli(eps_string(path));
    auto img = conjugate(c, fz).to_dense();
    auto want = materialize(eps_tilde_string(path), img.support);
    EXPECT_LE(max_deviation(img, want), kDenseTol) << trial;
  }
}

TEST(Strings, SymmetryOnDressedString) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    auto path = random_walk(rng, SiteId::vertex(0, 0), 2 + trial % 5);
    auto ft = eps_tilde_string(path);
    auto want = CliffordWord(pz(path.back()) * pz(path.front())) * ft;
    EXPECT_TRUE(equal_including_phase(beta(ft), want)) << trial;
  }
}

TEST(Strings, CrossingSignsRandom) {
  std::mt19937 rng(11);
  int odd = 0;
  for (int trial = 0; trial < 20; ++trial) {
    auto prim = random_walk(rng, SiteId::vertex(int(rng() % 3), int(rng() % 3)), 4 + int(rng() % 5));
    auto dual = random_dual_walk(rng, {0.5 + int(rng() % 3), 0.5 + int(rng() % 3)}, 4 + int(rng() % 5));
    auto f = as_pauli(eps_string(prim));
    auto fb = as_pauli(m_string(dual));
    int c = geometric_crossings(prim, dual);
    odd += c % 2;
    auto lhs = f * fb, rhs = fb * f;
    EXPECT_EQ(lhs, c % 2 ? -rhs : rhs) << trial << " crossings " << c;
  }
  EXPECT_GT(odd, 0);
}

TEST(Strings, SigmaErasureIsQuarterRotations) {
  DualPath p = DualPath::line({0.5, -1.5}, {0.5, 1.5});
  auto w = sigma_erasure(p);
  auto cr = crossed_edges(p);
  ASSERT_EQ(w.size(), cr.size());
  for (size_t i = 0; i < cr.size(); ++i) {
    auto axis = std::get<QuarterRotation>(w.factors()[i]).axis;
    EXPECT_EQ(axis, crossing_sign(cr[i]) > 0 ? -px(cr[i].edge) : px(cr[i].edge));
  }
  // Squares to the X-string up to the crossing-sign phases.
  EXPECT_TRUE(equal_up_to_phase(w * w, m_string(p)));
}

TEST(Strings, FusionFacts) {
  auto lat = square(-5, -5, 11, 11);
  std::vector<SiteId> path;
  for (int y = 0; y >= -4; --y) path.push_back(SiteId::vertex(0, y));
  auto eps = eps_tilde_string(path);
  auto m = m_string(DualPath{{{0.5, -4.5}, {0.5, 0.5}}, false});
  auto psi = eps * m;
  for (auto s : lat.qubits()) {
    if (lat.boundary_distance(s) < 2) continue;
    for (auto l : {X, Z}) {
      auto q = PhasedPauli::single(s, l);
      EXPECT_EQ(ad(eps, ad(eps, q)), q);
      EXPECT_EQ(ad(m, ad(m, q)), q);
      EXPECT_EQ(ad(psi, ad(psi, q)), q);
      EXPECT_EQ(ad(eps, ad(m, q)), ad(psi, q));
    }
  }
}

TEST(EntanglerAudit, LevinGu) {
  Lattice lat(LatticeKind::triangular, Topology::make_window(7, 7));
  auto r = entangler_audit(ModelId::levin_gu, lat, 3);
  EXPECT_TRUE(r.ok()) << (r.failures.empty() ? "" : r.failures.front());
  EXPECT_GT(r.checks, 0u);
}

TEST(EntanglerAudit, SetToricCode) {
  auto lat = square(0, 0, 6, 6);
  auto r = entangler_audit(ModelId::set_toric_code, lat, 2);
  EXPECT_TRUE(r.ok()) << (r.failures.empty() ? "" : r.failures.front());
  EXPECT_GT(r.checks, 10u);
}

TEST(Builtins, KnownNames) {
  Lattice tri(LatticeKind::triangular, Topology::make_window(6, 6));
  EXPECT_GT(builtin_circuit("builtin:levin-gu-entangler", tri).depth(), 0u);
  EXPECT_THROW(builtin_circuit("builtin:nope", tri), std::invalid_argument);
}
