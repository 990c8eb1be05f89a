#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "afprop/cantor.hpp"
#include "afprop/error.hpp"
#include "afprop/lipnorm.hpp"
#include "afprop/mk.hpp"
#include "afprop/random.hpp"
#include "afprop/tower.hpp"

using namespace afprop;

namespace {

const double kPhi = (std::sqrt(5.0) - 1.0) / 2.0;

LipData depth_one_m2() {
  const InductiveTower t({FdCStar({1}), FdCStar({2})}, {EmbeddingLayout({{0, 0}})},
                         {TraceWeights({1.0}), TraceWeights({1.0})});
  return LipData(t, BetaSequence({1.0, 0.5}), 1);
}

// sup over unit vectors v of |Tr(delta (v . sigma))|, on a latitude-longitude mesh.
double pauli_sphere_mesh(const ComplexMatrix& delta, int steps) {
  const Complex dx = delta(0, 1) + delta(1, 0);
  const Complex dy = Complex(0.0, 1.0) * (delta(0, 1) - delta(1, 0));
  const Complex dz = delta(0, 0) - delta(1, 1);
  double best = 0.0;
  for (int i = 0; i <= steps; ++i) {
    const double th = std::numbers::pi * i / steps;
    for (int j = 0; j < 2 * steps; ++j) {
      const double ph = std::numbers::pi * j / steps;
      const double x = std::sin(th) * std::cos(ph), y = std::sin(th) * std::sin(ph), z = std::cos(th);
      best = std::max(best, std::abs(x * dx + y * dy + z * dz));
    }
  }
  return best;
}

StateVec diag_state(const FdCStar& alg, double a, double b) {
  return StateVec(alg, {ComplexMatrix(2, 2, {a, 0.0, 0.0, b})});
}

}  // namespace

TEST(MkAbelian, EqualStatesGiveZero) {
  const LipData L(cantor_tower(4, cantor_beta(2.0, 4)));
  Rng rng(71);
  const StateVec phi = random_state(L.algebra(), rng);
  const auto r = mk_abelian(L, phi, phi);
  EXPECT_NEAR(r.value(), 0.0, 1e-12);
  EXPECT_EQ(r.method, MkMethod::lp_exact);
}

TEST(MkAbelian, PointEvaluationsMatchUltrametric) {
  const std::size_t N = 6;
  const auto beta = cantor_beta(3.0, N);
  const LipData L(cantor_tower(N, beta));
  const auto x = CantorPoint::parse("010011");
  for (std::size_t n0 = 0; n0 < N; ++n0) {
    auto bits = x.bits();
    bits[n0] ^= 1;
    const auto r = mk_abelian(L, point_evaluation(x, N), point_evaluation(CantorPoint(bits), N));
    EXPECT_NEAR(r.value(), 2.0 * beta[n0], 1e-9);
    EXPECT_LE(r.upper - r.lower, 1e-9);
  }
}

TEST(MkAbelian, StandardUltrametricAtIndexOne) {
  const LipData L(cantor_tower(6, cantor_beta(2.0, 6)));
  const auto r = mk_abelian(L, point_evaluation(CantorPoint::parse("010011"), 6),
                            point_evaluation(CantorPoint::parse("000011"), 6));
  EXPECT_NEAR(r.value(), 0.5, 1e-9);
}

TEST(MkAbelian, SymmetryReductionDoesNotChangeValue) {
  Rng rng(72);
  const LipData L(cantor_tower(4, cantor_beta(1.5, 4)));
  for (int i = 0; i < 10; ++i) {
    const StateVec phi = random_state(L.algebra(), rng);
    const StateVec psi = random_state(L.algebra(), rng);
    EXPECT_NEAR(mk_abelian(L, phi, psi, true).value(), mk_abelian(L, phi, psi, false).value(), 1e-9);
  }
  const auto x = point_evaluation(CantorPoint::parse("0110"), 4);
  const auto y = point_evaluation(CantorPoint::parse("0101"), 4);
  EXPECT_NEAR(mk_abelian(L, x, y, true).value(), mk_abelian(L, x, y, false).value(), 1e-9);
}

TEST(MkAbelian, RejectsNonAbelian) {
  const LipData L(uhf_tower({1}, 1, 1.0));
  const StateVec tau = trace_state(L.trace(), L.algebra());
  EXPECT_THROW(mk_abelian(L, tau, tau), ValidationError);
}

TEST(MkAbelian, MetricProperties) {
  Rng rng(73);
  const LipData L(cantor_tower(5, cantor_beta(2.0, 5)));
  for (int i = 0; i < 10; ++i) {
    const StateVec a = random_state(L.algebra(), rng);
    const StateVec b = random_state(L.algebra(), rng);
    const StateVec c = random_state(L.algebra(), rng);
    const double ab = mk_abelian(L, a, b).value(), ba = mk_abelian(L, b, a).value();
    const double bc = mk_abelian(L, b, c).value(), ac = mk_abelian(L, a, c).value();
    EXPECT_NEAR(ab, ba, 1e-9);
    EXPECT_LE(ac, ab + bc + 1e-8);
    EXPECT_LE(ab, 2.0 * L.beta()[0] + 1e-9);
  }
}

TEST(MkClosedForm, Examples) {
  const FdCStar m2({2});
  EXPECT_DOUBLE_EQ(mk_depth1_closed_form(1.0, diag_state(m2, 1, 0), diag_state(m2, 0, 1)), 2.0);
  EXPECT_DOUBLE_EQ(mk_depth1_closed_form(1.0, diag_state(m2, 0.3, 0.7), diag_state(m2, 0.3, 0.7)), 0.0);
  EXPECT_THROW(mk_depth1_closed_form(1.0, point_state(FdCStar({1, 1}), 0), point_state(FdCStar({1, 1}), 1)),
               ValidationError);
}

TEST(MkClosedForm, AgreesWithPauliSphereMesh) {
  Rng rng(74);
  const FdCStar m2({2});
  for (int i = 0; i < 20; ++i) {
    const StateVec phi = random_state(m2, rng);
    const StateVec psi = random_state(m2, rng);
    const ComplexMatrix delta = phi.block(0) - psi.block(0);
    EXPECT_NEAR(mk_depth1_closed_form(1.0, phi, psi), pauli_sphere_mesh(delta, 400), 1e-3);
  }
}

TEST(MkGeneral, EqualStatesGiveZero) {
  const LipData L(effros_shen_tower({1, 1}, kPhi, 1.0));
  Rng rng(75);
  const StateVec phi = random_state(L.algebra(), rng);
  const auto r = mk_general(L, phi, phi, 1e-6);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value(), 0.0, 1e-6);
}

TEST(MkGeneral, AgreesWithClosedFormOnM2) {
  Rng rng(76);
  const LipData L = depth_one_m2();
  for (int i = 0; i < 20; ++i) {
    const StateVec phi = random_state(L.algebra(), rng);
    const StateVec psi = random_state(L.algebra(), rng);
    const auto r = mk_general(L, phi, psi, 1e-6);
    ASSERT_TRUE(r.converged);
    EXPECT_LE(r.lower, r.upper);
    EXPECT_NEAR(r.value(), mk_depth1_closed_form(1.0, phi, psi), 1e-4);
    EXPECT_EQ(r.method, MkMethod::cutting_plane);
  }
}

TEST(MkGeneral, AgreesWithAbelianPath) {
  Rng rng(77);
  const LipData L(cantor_tower(3, cantor_beta(2.0, 3)));
  for (int i = 0; i < 5; ++i) {
    const StateVec phi = random_state(L.algebra(), rng);
    const StateVec psi = random_state(L.algebra(), rng);
    EXPECT_NEAR(mk_general(L, phi, psi, 1e-7).value(), mk_abelian(L, phi, psi).value(), 1e-6);
  }
}

TEST(MkGeneral, MetricPropertiesOnEffrosShen) {
  Rng rng(78);
  const double tol = 1e-5;
  const LipData L(effros_shen_tower({1, 1, 1}, kPhi, 1.0));
  for (int i = 0; i < 3; ++i) {
    const StateVec a = random_state(L.algebra(), rng);
    const StateVec b = random_state(L.algebra(), rng);
    const StateVec c = random_state(L.algebra(), rng);
    const double ab = mk_general(L, a, b, tol).value(), ba = mk_general(L, b, a, tol).value();
    const double bc = mk_general(L, b, c, tol).value(), ac = mk_general(L, a, c, tol).value();
    EXPECT_LE(std::abs(ab - ba), 2 * tol);
    EXPECT_LE(ac, ab + bc + 3 * tol);
    EXPECT_LE(ab, 2.0 * L.beta()[0] + tol);
    for (std::size_t n = 0; n < L.top(); ++n) {
      const StateVec an = pushforward_under_expectation(a, L.expectation(n));
      EXPECT_LE(mk_general(L, a, an, tol).value(), L.beta()[n] + tol);
    }
  }
}

TEST(MkGeneral, UnconvergedIsFlagged) {
  Rng rng(79);
  const LipData L(effros_shen_tower({1, 1, 1}, kPhi, 1.0));
  const StateVec a = random_state(L.algebra(), rng);
  const StateVec b = random_state(L.algebra(), rng);
  const auto r = mk_general(L, a, b, 1e-12, 2);
  EXPECT_FALSE(r.converged);
  EXPECT_LE(r.lower, r.upper);
}

TEST(Pushforward, Examples) {
  Rng rng(80);
  const LipData L(cantor_tower(3, cantor_beta(2.0, 3)));
  const auto tower = L.tower_ptr();
  const StateVec phi = random_state(L.algebra(), rng);
  const StateVec same = pushforward_under_expectation(phi, ExpectationOperator(tower, 3, 3));
  for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(std::abs(same.block(i)(0, 0) - phi.block(i)(0, 0)), 0.0, 1e-15);
  const StateVec tau = trace_state(L.trace(), L.algebra());
  for (std::size_t n = 0; n <= 3; ++n) {
    const StateVec t2 = pushforward_under_expectation(tau, ExpectationOperator(tower, 3, n));
    for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(t2.block(i)(0, 0).real(), 0.125, 1e-15);
  }
  // delta at 101 pushed to level 1 spreads over the cylinder z_0 = 1.
  const StateVec p = pushforward_under_expectation(point_evaluation(CantorPoint::parse("101"), 3),
                                                   ExpectationOperator(tower, 3, 1));
  for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(p.block(i)(0, 0).real(), i >= 4 ? 0.25 : 0.0, 1e-15);
}

TEST(HermitianCoordinates, RoundTrip) {
  Rng rng(81);
  const FdCStar alg({3, 1, 2});
  EXPECT_EQ(hermitian_coordinate_count(alg), 9u + 1u + 4u);
  const BlockElement a = random_self_adjoint(alg, rng);
  const BlockElement b = from_hermitian_coordinates(alg, to_hermitian_coordinates(a));
  for (std::size_t i = 0; i < 3; ++i) EXPECT_LE((a.block(i) - b.block(i)).max_abs(), 1e-15);
}
