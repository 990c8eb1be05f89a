#include <gtest/gtest.h>

#include <random>

#include "afprop/simplex.hpp"

using namespace afprop;

namespace {

void add_nonnegativity(LinearProgram& lp) {
  for (std::size_t i = 0; i < lp.num_vars; ++i) {
    std::vector<double> row(lp.num_vars, 0.0);
    row[i] = -1.0;
    lp.add_row(row, 0.0);
  }
}

}  // namespace

TEST(Simplex, TwoVariableProblem) {
  // max x + y  s.t.  x + 2y <= 4, 3x + y <= 6, x, y >= 0: optimum (8/5, 6/5).
  LinearProgram lp{2, {1.0, 1.0}, {}, {}};
  lp.add_row({1.0, 2.0}, 4.0);
  lp.add_row({3.0, 1.0}, 6.0);
  add_nonnegativity(lp);
  const auto s = solve_lp(lp);
  ASSERT_EQ(s.status, LpStatus::optimal);
  EXPECT_NEAR(s.value, 2.8, 1e-12);
  EXPECT_NEAR(s.x[0], 1.6, 1e-12);
  EXPECT_NEAR(s.x[1], 1.2, 1e-12);
}

TEST(Simplex, FreeVariables) {
  // max -x  s.t.  -x <= 3, x <= 5: optimum x = -3.
  LinearProgram lp{1, {-1.0}, {}, {}};
  lp.add_row({-1.0}, 3.0);
  lp.add_row({1.0}, 5.0);
  const auto s = solve_lp(lp);
  ASSERT_EQ(s.status, LpStatus::optimal);
  EXPECT_NEAR(s.x[0], -3.0, 1e-12);
}

TEST(Simplex, Unbounded) {
  LinearProgram lp{2, {1.0, 0.0}, {}, {}};
  lp.add_row({0.0, 1.0}, 1.0);
  EXPECT_EQ(solve_lp(lp).status, LpStatus::unbounded);
}

TEST(Simplex, BealeCyclingExampleTerminates) {
  // Beale's example cycles under plain Dantzig pricing with lowest-index ties.
  // Optimum 5/4 at x = (1, 0, 1, 0), certified by the dual y = (0, 3/2, 5/4).
  LinearProgram lp{4, {0.75, -20.0, 0.5, -6.0}, {}, {}};
  lp.add_row({0.25, -8.0, -1.0, 9.0}, 0.0);
  lp.add_row({0.5, -12.0, -0.5, 3.0}, 0.0);
  lp.add_row({0.0, 0.0, 1.0, 0.0}, 1.0);
  add_nonnegativity(lp);
  const auto s = solve_lp(lp);
  ASSERT_EQ(s.status, LpStatus::optimal);
  EXPECT_NEAR(s.value, 1.25, 1e-12);
}

TEST(Simplex, IterationLimitReported) {
  LinearProgram lp{2, {1.0, 1.0}, {}, {}};
  lp.add_row({1.0, 2.0}, 4.0);
  lp.add_row({3.0, 1.0}, 6.0);
  EXPECT_EQ(solve_lp(lp, 1).status, LpStatus::iteration_limit);
}

TEST(Simplex, FeasibilityOnRandomBoxes) {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 5;
    LinearProgram lp{n, {}, {}, {}};
    for (std::size_t i = 0; i < n; ++i) lp.objective.push_back(u(rng));
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> row(n, 0.0);
      row[i] = 1.0;
      lp.add_row(row, 1.0);
      row[i] = -1.0;
      lp.add_row(row, 1.0);
    }
    for (int r = 0; r < 10; ++r) {
      std::vector<double> row(n);
      for (auto& x : row) x = u(rng);
      lp.add_row(row, 0.5 + 0.5 * (u(rng) + 1.0));
    }
    const auto s = solve_lp(lp);
    ASSERT_EQ(s.status, LpStatus::optimal);
    double value = 0.0;
    for (std::size_t i = 0; i < n; ++i) value += lp.objective[i] * s.x[i];
    EXPECT_NEAR(value, s.value, 1e-10);
    for (std::size_t r = 0; r < lp.rows.size(); ++r) {
      double lhs = 0.0;
      for (std::size_t i = 0; i < n; ++i) lhs += lp.rows[r][i] * s.x[i];
      EXPECT_LE(lhs, lp.rhs[r] + 1e-10);
    }
  }
}
