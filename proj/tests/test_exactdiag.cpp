#include <gtest/gtest.h>

#include <random>

#include "qd/defects.hpp"
#include "qd/exactdiag.hpp"

using namespace qd;

namespace {

Lattice tri_lat(Topology t) { return Lattice(LatticeKind::triangular, t); }
Lattice sq_lat(Topology t) { return Lattice(LatticeKind::square_ve, t); }

PhasedPauli random_pauli(std::mt19937_64& rng, const std::vector<SiteId>& sites) {
  std::vector<std::pair<uint64_t, uint8_t>> ops;
  for (auto s : sites) {
    auto l = uint8_t(rng() % 4);
    if (l) ops.emplace_back(s.code, l);
  }
  return PhasedPauli::from_ops(ops, int(rng() % 8));
}

CliffordWord random_word(std::mt19937_64& rng, const std::vector<SiteId>& sites) {
  CliffordWord w(int(rng() % 8));
  for (int k = 0; k < 6; ++k) {
    auto p = random_pauli(rng, sites).with_phase(0);
    if (rng() % 2)
      w.append(p);
    else
      w.append(rot(rng() % 2 ? p : -p));
  }
  return w;
}

const GroundSpace& set_torus() {
  static const Lattice lat = sq_lat(Topology::make_torus(2, 2));
  static const GroundSpace gs = ground_space(ModelId::set_toric_code, lat);
  return gs;
}

}  // namespace

TEST(ApplyOperator, MatchesDenseMaterialization) {
  std::mt19937_64 rng(7);
  std::vector<SiteId> sites;
  for (int x = 0; x < 5; ++x) sites.push_back(SiteId::vertex(x, 0));
  for (int trial = 0; trial < 50; ++trial) {
    auto w = random_word(rng, sites);
    Mat id = Mat::Identity(32, 32);
    apply_operator(w, id, sites);
    EXPECT_LT((id - materialize(w, sites).m).cwiseAbs().maxCoeff(), 1e-12) << w.str();
    Mat id2 = Mat::Identity(32, 32);
    apply_operator(materialize(w, {sites[1], sites[3], sites[0], sites[2], sites[4]}), id2, sites);
    EXPECT_LT((id2 - id).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(GroundSpace, ParamagnetWindowIsUnique) {
  auto gs = ground_space(ModelId::trivial_paramagnet, tri_lat(Topology::make_window(3, 3)));
  EXPECT_EQ(gs.dimension, 1u);
  EXPECT_LT(gs.residual, 1e-9);
  // The product state |+...+>.
  Eigen::VectorXcd plus = Eigen::VectorXcd::Constant(512, 1.0 / std::sqrt(512.0));
  EXPECT_NEAR(std::abs(plus.dot(gs.basis.col(0))), 1.0, 1e-9);
}

TEST(GroundSpace, LevinGuTorusIsUnique) {
  auto lat = tri_lat(Topology::make_torus(3, 3));
  auto gs = ground_space(ModelId::levin_gu, lat);
  EXPECT_EQ(gs.dimension, 1u);
  EXPECT_LT(gs.residual, 1e-9);
}

TEST(GroundSpace, SetTorusIsFourfold) {
  auto& gs = set_torus();
  EXPECT_EQ(gs.support.size(), 12u);
  EXPECT_EQ(gs.dimension, 4u);
  EXPECT_LT(gs.residual, 1e-9);
}

TEST(GroundSpace, ProjectorInvariants) {
  auto lat = tri_lat(Topology::make_torus(3, 3));
  auto gs = ground_space(ModelId::levin_gu, lat);
  Mat P = gs.projector();
  EXPECT_LT((P * P - P).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_LT((P - P.adjoint()).cwiseAbs().maxCoeff(), 1e-9);
  for (auto& t : hamiltonian_terms(ModelId::levin_gu, lat)) {
    Mat TP = P;
    apply_operator(t.word, TP, gs.support);
    EXPECT_LT((P * TP - P).cwiseAbs().maxCoeff(), 1e-9) << t.name();
    Mat T = Mat::Identity(512, 512);
    apply_operator(t.word, T, gs.support);
    EXPECT_LT((T * P - P * T).cwiseAbs().maxCoeff(), 1e-9) << t.name();
  }
}

TEST(GroundSpace, SetBasisIsOrthonormalAndInvariant) {
  auto lat = sq_lat(Topology::make_torus(2, 2));
  auto& gs = set_torus();
  Mat id = Mat::Identity(4, 4);
  EXPECT_LT((gs.basis.adjoint() * gs.basis - id).cwiseAbs().maxCoeff(), 1e-9);
  for (auto& t : hamiltonian_terms(ModelId::set_toric_code, lat)) {
    Mat TB = gs.basis;
    apply_operator(t.word, TB, gs.support);
    EXPECT_LT((gs.basis.adjoint() * TB - id).cwiseAbs().maxCoeff(), 1e-9) << t.name();
  }
}

TEST(GroundSpace, TermExpectationsAreOne) {
  auto lat = sq_lat(Topology::make_torus(2, 2));
  for (auto& t : hamiltonian_terms(ModelId::set_toric_code, lat))
    EXPECT_NEAR(std::abs(expectation(set_torus(), t.word) - 1.0), 0.0, 1e-9) << t.name();
}

TEST(GroundSpace, DimensionInvariantUnderEntangler) {
  auto lt = tri_lat(Topology::make_torus(3, 3));
  auto a = ground_space(ModelId::trivial_paramagnet, lt);
  auto b = conjugated_ground_space(ModelId::trivial_paramagnet, lt, levin_gu_entangler(lt));
  EXPECT_EQ(a.dimension, b.dimension);
  EXPECT_LT(b.residual, 1e-9);

  auto st = sq_lat(Topology::make_torus(2, 2));
  auto c = ground_space(ModelId::toric_code_ancilla, st);
  auto d = conjugated_ground_space(ModelId::toric_code_ancilla, st, set_entangler(st));
  EXPECT_EQ(c.dimension, 4u);
  EXPECT_EQ(d.dimension, c.dimension);
  EXPECT_EQ(set_torus().dimension, c.dimension);
}

TEST(GroundSpace, SeedDoesNotChangeTheSpace) {
  auto lat = sq_lat(Topology::make_torus(2, 2));
  auto other = ground_space(ModelId::set_toric_code, lat, 99);
  EXPECT_EQ(other.dimension, 4u);
  EXPECT_LT((other.projector() - set_torus().projector()).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(GroundSpace, QubitCap) {
  EXPECT_THROW(ground_space(ModelId::set_toric_code, sq_lat(Topology::make_torus(3, 3))), std::exception);
}

TEST(Expectation, RejectsForeignSupport) {
  EXPECT_THROW(expectation(set_torus(), CliffordWord(PhasedPauli::single(SiteId::vertex(5, 5), X))),
               std::invalid_argument);
}

TEST(Expectation, PizzaIsOneOnTheTorus) {
  auto lat = sq_lat(Topology::make_torus(2, 2));
  auto S = std::vector<SiteId>{SiteId::vertex(0, 0)};
  DualPath xi1{{{-0.5, -0.5}, {-0.5, 0.5}, {0.5, 0.5}}, false};
  DualPath xi2{{{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}}, false};
  for (auto [a, b] : {std::pair{xi1, xi2}, std::pair{xi2, xi1}}) {
    auto w = wrap(pizza_operator(a, b, S), lat);
    EXPECT_LT(std::abs(expectation(set_torus(), w) - 1.0), 1e-9);
  }
  // The erasure pair alone is not a ground-state symmetry.
  auto bare = wrap(sigma_erasure(xi1) * sigma_erasure(xi2).inverse(), lat);
  EXPECT_GT(std::abs(expectation(set_torus(), bare) - 1.0), 0.25);
}

TEST(Expectation, LevinGuDefectTermVanishes) {
  auto lat = tri_lat(Topology::make_window(-1, -1, 4, 3));
  auto gs = entangled_product_ground_space(lat, levin_gu_entangler(lat));
  ASSERT_EQ(gs.dimension, 1u);
  EXPECT_LT(gs.residual, 1e-9);
  auto ray = DualPath::line({0.5, -5.25}, {0.5, -4.25});
  int twisted = 0;
  for (auto v : lat.vertices()) {
    if (!term_fits(ModelId::levin_gu, TermKind::B_lg, v, lat)) continue;
    auto b = term(ModelId::levin_gu, TermKind::B_lg, v, lat);
    auto bh = levin_gu_twisted_term(ray, 12, v, lat);
    EXPECT_LT(std::abs(expectation(gs, b) - 1.0), 1e-9);
    if (equal_including_phase(b, bh)) continue;
    ++twisted;
    EXPECT_LT(std::abs(expectation(gs, bh)), 1e-9) << v.str();
  }
  EXPECT_EQ(twisted, 2);
}
