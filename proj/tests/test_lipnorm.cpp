#include <gtest/gtest.h>

#include <cmath>

#include "afprop/cantor.hpp"
#include "afprop/cfrac.hpp"
#include "afprop/error.hpp"
#include "afprop/lipnorm.hpp"
#include "afprop/random.hpp"
#include "afprop/tower.hpp"

using namespace afprop;

namespace {

const double kPhi = (std::sqrt(5.0) - 1.0) / 2.0;

}  // namespace

TEST(Lip, UnitAndScalarsVanish) {
  const LipData L(effros_shen_tower({1, 1, 1}, kPhi, 1.0));
  EXPECT_EQ(lip(L, BlockElement::unit(L.algebra())), 0.0);
  EXPECT_EQ(lip(L, BlockElement::scalar(L.algebra(), -3.5)), 0.0);
}

TEST(Lip, CantorCoordinateUnitaries) {
  for (std::size_t N = 1; N <= 8; ++N) {
    const auto beta = cantor_beta(2.0, N);
    const LipData L(cantor_tower(N, beta));
    for (std::size_t n = 0; n < N; ++n) EXPECT_NEAR(lip(L, u_element(n, N)), 1.0 / beta[n], 1e-10);
  }
}

TEST(Lip, DepthOneClosedForm) {
  const InductiveTower t({FdCStar({1}), FdCStar({2})}, {EmbeddingLayout({{0, 0}})},
                         {TraceWeights({1.0}), TraceWeights({1.0})});
  const LipData L(t, BetaSequence({1.0, 0.5}), 1);
  Rng rng(51);
  for (int i = 0; i < 20; ++i) {
    const BlockElement a = random_self_adjoint(L.algebra(), rng);
    const BlockElement centered = a - BlockElement::scalar(L.algebra(), trace_eval(L.trace(), a));
    EXPECT_NEAR(lip(L, a), cstar_norm(centered), 1e-12);
  }
}

TEST(Lip, RejectsNonSelfAdjoint) {
  const LipData L(cantor_tower(2, cantor_beta(2.0, 2)));
  const BlockElement a = BlockElement::scalar(L.algebra(), Complex(0.0, 1.0));
  EXPECT_THROW(lip(L, a), ValidationError);
  EXPECT_THROW(lip(L, BlockElement::unit(FdCStar({2}))), ValidationError);
}

TEST(Lip, ScalarKernelSeminormAndContraction) {
  Rng rng(52);
  const LipData L(effros_shen_tower({1, 1, 1, 1}, kPhi, 1.0));
  for (int i = 0; i < 100; ++i) {
    const BlockElement a = random_self_adjoint(L.algebra(), rng);
    const BlockElement b = random_self_adjoint(L.algebra(), rng);
    const double la = lip(L, a), lb = lip(L, b);
    EXPECT_GT(la, 1e-10);
    EXPECT_NEAR(lip(L, Complex(-2.5) * a), 2.5 * la, 1e-10 * (1.0 + la));
    EXPECT_LE(lip(L, a + b), la + lb + 1e-10);
    for (std::size_t n = 0; n < L.top(); ++n) EXPECT_LE(lip(L, L.expectation(n).apply(a)), la + 1e-9);
  }
}

TEST(Lip, StateDifferenceBound) {
  Rng rng(53);
  const LipData L(uhf_tower({1, 2, 1}, 3, 1.0));
  for (int i = 0; i < 100; ++i) {
    const StateVec phi = random_state(L.algebra(), rng);
    const StateVec psi = random_state(L.algebra(), rng);
    const BlockElement a = random_self_adjoint(L.algebra(), rng);
    EXPECT_LE(std::abs(state_eval(phi, a) - state_eval(psi, a)), 2.0 * L.beta()[0] * lip(L, a) + 1e-8);
  }
}

TEST(QuasiLeibniz, UnitPair) {
  const LipData L(cantor_tower(3, cantor_beta(2.0, 3)));
  const auto u = BlockElement::unit(L.algebra());
  const auto m = quasi_leibniz_margin(L, u, u);
  EXPECT_EQ(m.jordan, 0.0);
  EXPECT_EQ(m.lie, 0.0);
}

TEST(QuasiLeibniz, RandomPairsOnEffrosShen) {
  Rng rng(54);
  const LipData L(effros_shen_tower({1, 1, 1}, kPhi, 1.0));
  for (int i = 0; i < 500; ++i) {
    const BlockElement a = random_self_adjoint(L.algebra(), rng);
    const BlockElement b = random_self_adjoint(L.algebra(), rng);
    const auto m = quasi_leibniz_margin(L, a, b);
    EXPECT_GE(m.jordan, -1e-9);
    EXPECT_GE(m.lie, -1e-9);
  }
}

TEST(QuasiLeibniz, CommutingPairHasFullLieMargin) {
  Rng rng(55);
  const LipData L(cantor_tower(3, cantor_beta(2.0, 3)));
  const BlockElement a = random_self_adjoint(L.algebra(), rng);
  const BlockElement b = random_self_adjoint(L.algebra(), rng);
  const auto m = quasi_leibniz_margin(L, a, b);
  EXPECT_EQ(m.lie, 2.0 * (cstar_norm(a) * lip(L, b) + cstar_norm(b) * lip(L, a)));
}

TEST(LipschitzConstant, Examples) {
  const InductiveTower t = uhf_tower({1, 1}, 2, 1.0).tower;
  EXPECT_DOUBLE_EQ(lip_lipschitz_constant(LipData(t, BetaSequence({1.0, 1.0, 1.0}), 2)), 2.0);
  EXPECT_DOUBLE_EQ(lip_lipschitz_constant(LipData(cantor_tower(3, cantor_beta(2.0, 3)))), 32.0);
}

TEST(LipschitzConstant, Empirical) {
  Rng rng(56);
  const double theta = std::sqrt(3.0) - 1.0;
  const LipData L(effros_shen_tower(cf_expand(theta, 4), theta, 1.0));
  const double K = lip_lipschitz_constant(L);
  for (int i = 0; i < 200; ++i) {
    const BlockElement a = random_self_adjoint(L.algebra(), rng);
    const BlockElement b = random_self_adjoint(L.algebra(), rng);
    EXPECT_LE(std::abs(lip(L, a) - lip(L, b)), K * cstar_norm(a - b) + 1e-12);
  }
}
