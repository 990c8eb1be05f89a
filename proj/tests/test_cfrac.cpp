#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "afprop/cfrac.hpp"
#include "afprop/error.hpp"

using namespace afprop;

namespace {

const double kPhi = (std::sqrt(5.0) - 1.0) / 2.0;

std::vector<BigInt> big(std::initializer_list<int> v) { return {v.begin(), v.end()}; }

}  // namespace

TEST(Convergents, Fibonacci) {
  const auto cf = convergents({1, 1, 1, 1, 1});
  EXPECT_EQ(cf.q, big({1, 1, 2, 3, 5, 8}));
  EXPECT_EQ(cf.p, big({0, 1, 1, 2, 3, 5}));
  EXPECT_EQ(convergent_determinant(cf, 2), -1);
}

TEST(Convergents, SingleDigit) {
  const auto cf = convergents({2});
  EXPECT_EQ(cf.p[1], 1);
  EXPECT_EQ(cf.q[1], 2);
}

TEST(Convergents, ZeroDigitRejected) { EXPECT_THROW(convergents({1, 0, 2}), ValidationError); }

TEST(Convergents, DeterminantIdentityExactToDepth30) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<Digit> d(1, 1000000);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Digit> digits(30);
    for (auto& x : digits) x = d(rng);
    const auto cf = convergents(digits);
    for (std::size_t n = 1; n <= 30; ++n) EXPECT_EQ(convergent_determinant(cf, n), (n % 2 == 1) ? 1 : -1);
  }
}

TEST(CfExpand, Golden) { EXPECT_EQ(cf_expand(kPhi, 6), std::vector<Digit>(6, 1)); }

TEST(CfExpand, SqrtTwo) { EXPECT_EQ(cf_expand(std::sqrt(2.0) - 1.0, 5), std::vector<Digit>(5, 2)); }

TEST(CfExpand, RationalRunsOutOfPrecision) {
  EXPECT_THROW(cf_expand(0.5, 3), NumericalError);
  EXPECT_THROW(cf_expand(1.5, 3), ValidationError);
  EXPECT_EQ(cf_expand_partial(0.5, 3).size(), 1u);
}

TEST(CfExpand, ConvergenceAndAlternatingEnclosure) {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> u(0.001, 0.999);
  for (int trial = 0; trial < 200; ++trial) {
    const double theta = u(rng);
    const auto digits = cf_expand_partial(theta, 12);
    const auto cf = convergents(digits);
    const Rational x = exact_rational(theta);
    for (std::size_t n = 1; n < cf.q.size(); ++n) {
      const Rational c(cf.p[n], cf.q[n]);
      const Rational gap = x > c ? Rational(x - c) : Rational(c - x);
      EXPECT_LT(gap, Rational(1, cf.q[n] * cf.q[n]));
      if (n % 2 == 0) EXPECT_LT(c, x);
      else EXPECT_GT(c, x);
    }
  }
}

TEST(CfExpand, RoundTrip) {
  std::mt19937_64 rng(33);
  std::uniform_int_distribution<Digit> d(1, 3);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Digit> digits(1 + trial % 12);
    for (auto& x : digits) x = d(rng);
    EXPECT_EQ(cf_expand(cf_value_golden_tail(digits), digits.size()), digits);
  }
}

TEST(BaireDistance, Examples) {
  const auto same = baire_distance({1, 2, 3}, {1, 2, 3});
  EXPECT_EQ(same.value, 0.0);
  EXPECT_TRUE(same.determined);
  const auto d = baire_distance({1, 2, 3, 4}, {1, 2, 4, 4});
  EXPECT_EQ(d.value, 0.25);
  EXPECT_TRUE(d.determined);
  const auto u = baire_distance({1, 2}, {1, 2, 3});
  EXPECT_FALSE(u.determined);
  EXPECT_EQ(u.value, 0.25);
}

TEST(BaireDistance, StrongTriangleInequality) {
  std::mt19937_64 rng(34);
  std::uniform_int_distribution<Digit> d(1, 2);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<Digit> x(6), y(6), z(6);
    for (std::size_t i = 0; i < 6; ++i) x[i] = d(rng), y[i] = d(rng), z[i] = d(rng);
    const double xz = baire_distance(x, z).value;
    EXPECT_LE(xz, std::max(baire_distance(x, y).value, baire_distance(y, z).value));
  }
}

TEST(BaireBox, Predicates) {
  const BaireBox finite({1, 1, 1}, {3, 4, 5}, 7);
  EXPECT_TRUE(box_predicates(finite).closed);
  EXPECT_TRUE(box_predicates(finite).totally_bounded);
  const BaireBox open_tail({1, 1}, {2, 2}, std::nullopt);
  EXPECT_FALSE(box_predicates(open_tail).totally_bounded);
  const BaireBox open_head({1, 1}, {std::nullopt, 2}, 3);
  EXPECT_FALSE(box_predicates(open_head).totally_bounded);
  const BaireBox singleton({2, 5}, {2, 5}, 1);
  EXPECT_TRUE(box_predicates(singleton).totally_bounded);
  EXPECT_THROW(BaireBox({3}, {2}, 1), ValidationError);
}
