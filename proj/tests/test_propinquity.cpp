#include <gtest/gtest.h>

#include <cmath>

#include "afprop/error.hpp"
#include "afprop/lipnorm.hpp"
#include "afprop/propinquity.hpp"
#include "afprop/tower.hpp"

using namespace afprop;

namespace {

const double kPhi = (std::sqrt(5.0) - 1.0) / 2.0;

LipData depth_one_m2(double beta0) {
  const InductiveTower t({FdCStar({1}), FdCStar({2})}, {EmbeddingLayout({{0, 0}})},
                         {TraceWeights({1.0}), TraceWeights({1.0})});
  return LipData(t, BetaSequence({beta0, beta0 / 2.0}), 1);
}

}  // namespace

TEST(TruncationBound, Uhf) {
  const LipData L(uhf_tower({1, 1, 1, 1}, 4, 1.0));
  for (std::size_t n = 0; n <= 4; ++n) {
    const auto b = truncation_bound(L, n);
    EXPECT_DOUBLE_EQ(b.value, std::ldexp(1.0, -int(n)));
    EXPECT_TRUE(b.certified);
    EXPECT_EQ(b.kind, BoundKind::truncation);
  }
  EXPECT_THROW(truncation_bound(L, 5), ValidationError);
}

TEST(TruncationBound, EffrosShen) {
  const LipData L(effros_shen_tower({1, 1, 1, 1, 1}, kPhi, 1.0));
  EXPECT_DOUBLE_EQ(truncation_bound(L, 5).value, 1.0 / 89.0);
  EXPECT_GT(truncation_bound(L, 5).value, 0.0);
}

TEST(PrefixMatchBound, UhfPairs) {
  const auto a = uhf_tower({1, 1, 1, 1}, 4, 1.0);
  const auto b = uhf_tower({1, 1, 1, 2}, 4, 1.0);
  const auto shared = prefix_match_bound(a, b, 3);
  EXPECT_EQ(shared.kind, BoundKind::prefix);
  EXPECT_DOUBLE_EQ(shared.value, 2.0 * std::ldexp(1.0, -3));
  const auto broken = prefix_match_bound(a, b, 4);
  EXPECT_EQ(broken.kind, BoundKind::diameter);
  EXPECT_DOUBLE_EQ(broken.value, 1.0);
  EXPECT_FALSE(broken.notes.empty());
}

TEST(PrefixMatchBound, IdenticalTowers) {
  const auto a = uhf_tower({1, 2, 1}, 3, 1.0);
  EXPECT_DOUBLE_EQ(prefix_match_bound(a, a, 3).value, 2.0 * a.beta[3]);
}

TEST(PrefixMatchBound, NoSharedPrefix) {
  const auto a = uhf_tower({1, 1}, 2, 1.0);
  const auto b = uhf_tower({2, 1}, 2, 1.0);
  EXPECT_DOUBLE_EQ(prefix_match_bound(a, b, 1).value, 1.0);
  EXPECT_DOUBLE_EQ(prefix_match_bound(a, b, 0).value, 1.0);
}

TEST(HolderBound, Examples) {
  EXPECT_DOUBLE_EQ(uhf_holder_bound({1, 1, 2, 5}, {1, 1, 2, 5}, 1.0).value, 0.0);
  EXPECT_DOUBLE_EQ(uhf_holder_bound({1, 1, 2, 5}, {1, 1, 2, 7}, 1.0).value, 0.25);
  EXPECT_DOUBLE_EQ(uhf_holder_bound({1, 1, 2, 5}, {1, 1, 2, 7}, 2.0).value, 0.03125);
  const auto u = uhf_holder_bound({1, 1}, {1, 1, 3}, 1.0);
  EXPECT_FALSE(u.certified);
  EXPECT_FALSE(u.notes.empty());
  EXPECT_THROW(uhf_holder_bound({0}, {1}, 1.0), ValidationError);
}

TEST(HolderBound, PrefixBoundIsSmaller) {
  for (std::size_t N = 1; N <= 6; ++N)
    for (double k : {1.0, 2.0}) {
      std::vector<Digit> beta(N + 1, 1), eta(N + 1, 1);
      beta[1 % (N + 1)] = 2;
      eta = beta;
      eta[N] = 3;
      const auto a = uhf_tower(beta, N + 1, k);
      const auto b = uhf_tower(eta, N + 1, k);
      EXPECT_LE(prefix_match_bound(a, b, N).value, uhf_holder_bound(beta, eta, k).value);
    }
}

TEST(TwoLipnormBound, CoincidentLipNormsShrinkWithGrid) {
  const LipData L(cantor_tower(2, cantor_beta(2.0, 2)));
  double prev = std::numeric_limits<double>::infinity();
  for (double h : {0.2, 0.1, 0.05}) {
    const auto b = two_lipnorm_bridge_bound(L, L, h);
    ASSERT_TRUE(b.certified);
    EXPECT_EQ(b.params.at("sampled_max_diff"), 0.0);
    EXPECT_LE(b.value, prev);
    prev = b.value;
  }
  EXPECT_LT(prev, two_lipnorm_bridge_bound(L, L, 0.2).value);
}

TEST(TwoLipnormBound, ScaledPair) {
  // On C -> M(2) with beta(0) = 1, lip is the operator norm on traceless
  // elements, so the sphere minimum is 1 and sup |L1 - L2| = delta.
  const double delta = 0.1;
  const LipData L1 = depth_one_m2(1.0);
  const LipData L2 = depth_one_m2(1.0 / (1.0 + delta));
  const auto b = two_lipnorm_bridge_bound(L1, L2, 0.02);
  ASSERT_TRUE(b.certified);
  EXPECT_LE(b.value, 3.0 * delta);
  EXPECT_GE(b.value, delta / 3.0);
}

TEST(TwoLipnormBound, MonotoneUnderRefinement) {
  const LipData L1(effros_shen_tower({1, 1}, kPhi, 1.0));
  const LipData L2(effros_shen_tower({1, 1}, kPhi + 1e-2, 1.0));
  const double b1 = two_lipnorm_bridge_bound(L1, L2, 1.6).value;
  const double b2 = two_lipnorm_bridge_bound(L1, L2, 0.8).value;
  const double b3 = two_lipnorm_bridge_bound(L1, L2, 0.4).value;
  EXPECT_LE(b2, b1);
  EXPECT_LE(b3, b2);
}

TEST(TwoLipnormBound, RefusesOverBudget) {
  const LipData L(effros_shen_tower({1, 1, 1}, kPhi, 1.0));
  try {
    two_lipnorm_bridge_bound(L, L, 1e-4);
    FAIL();
  } catch (const BudgetError& e) {
    EXPECT_GT(e.required(), 1e7);
  }
}

TEST(TracePerturbation, EffrosShenLevelTwo) {
  const LipData L1(effros_shen_tower({1, 1}, kPhi, 1.0));
  const LipData L2(effros_shen_tower({1, 1}, kPhi + 1e-4, 1.0));
  const auto b = trace_perturbation_bound(L1, L2);
  EXPECT_TRUE(b.certified);
  EXPECT_LT(b.value, 0.05);
  EXPECT_LE(finite_level_bound(L1, L2, 0.05).value, b.value);
  EXPECT_EQ(trace_perturbation_bound(L1, L1).value, 0.0);
}

TEST(EffrosShenChain, UniversalPartAndErrors) {
  const double theta2 = kPhi + 1e-6;
  const auto b = effros_shen_chain_bound(kPhi, theta2, 1.0, 5, 0.05);
  EXPECT_LE(b.params.at("universal"), 2.0 / 89.0);
  EXPECT_DOUBLE_EQ(fibonacci_floor(5, 1.0), 2.0 / 89.0);
  EXPECT_THROW(effros_shen_chain_bound(kPhi, 0.45, 1.0, 3, 0.05), InconsistencyError);
}

TEST(EffrosShenChain, EqualThetaReducesToTruncations) {
  const auto b = effros_shen_chain_bound(kPhi, kPhi, 1.0, 3, 0.05);
  EXPECT_DOUBLE_EQ(b.value, 2.0 / (9.0 + 4.0));
}

TEST(EffrosShenChain, BestChainImprovesWithPrefix) {
  double prev = std::numeric_limits<double>::infinity();
  for (int m = 1; m <= 8; ++m) {
    const auto b = effros_shen_best_chain(kPhi, kPhi + std::pow(10.0, -m), 1.0, 0.05, 12);
    EXPECT_LE(b.value, prev);
    prev = b.value;
  }
  EXPECT_EQ(effros_shen_best_chain(kPhi, 0.45, 1.0, 0.05, 12).kind, BoundKind::diameter);
}

TEST(BridgeBound, JsonAndCsv) {
  BridgeBound b;
  b.value = 0.25;
  b.kind = BoundKind::holder;
  b.certified = true;
  b.params = {{"k", 1.0}};
  const auto j = to_json(b);
  EXPECT_EQ(j["kind"], "holder");
  EXPECT_EQ(j["value"], 0.25);
  EXPECT_EQ(csv_header({"k"}), "value,kind,certified,k");
  EXPECT_EQ(to_csv_row(b, {"k"}), "0.25,holder,true,1");
}
