#include "afprop/simplex.hpp"

#include <cmath>
#include <limits>

#include "afprop/error.hpp"

namespace afprop {

void LinearProgram::add_row(std::vector<double> row, double bound) {
  if (row.size() != num_vars) throw ValidationError("constraint row has the wrong length");
  rows.push_back(std::move(row));
  rhs.push_back(bound);
}

namespace {

constexpr double kCostTol = 1e-11;
constexpr double kPivotTol = 1e-11;
constexpr std::size_t kDegenerateRun = 50;

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, std::size_t max_pivots) {
  const std::size_t n = lp.num_vars;
  const std::size_t m = lp.rows.size();
  if (lp.objective.size() != n || lp.rhs.size() != m) throw ValidationError("linear program has inconsistent sizes");
  for (double b : lp.rhs)
    if (!(b >= 0.0)) throw ValidationError("linear program needs a nonnegative right-hand side");

  // Columns: u (n), v (n), slacks (m); x = u - v.
  const std::size_t cols = 2 * n + m;
  const std::size_t width = cols + 1;
  std::vector<double> t(m * width, 0.0);
  auto T = [&](std::size_t r, std::size_t c) -> double& { return t[r * width + c]; };
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      T(r, c) = lp.rows[r][c];
      T(r, n + c) = -lp.rows[r][c];
    }
    T(r, 2 * n + r) = 1.0;
    T(r, cols) = lp.rhs[r];
  }
  // Reduced costs z_j - c_j; a negative entry can enter.
  std::vector<double> z(width, 0.0);
  for (std::size_t c = 0; c < n; ++c) {
    z[c] = -lp.objective[c];
    z[n + c] = lp.objective[c];
  }
  std::vector<std::size_t> basis(m);
  for (std::size_t r = 0; r < m; ++r) basis[r] = 2 * n + r;

  LpSolution sol;
  std::size_t degenerate = 0;
  while (true) {
    const bool bland = degenerate >= kDegenerateRun;
    std::size_t enter = cols;
    double best = -kCostTol;
    for (std::size_t c = 0; c < cols; ++c) {
      if (z[c] < best) {
        enter = c;
        if (bland) break;
        best = z[c];
      }
    }
    if (enter == cols) {
      sol.status = LpStatus::optimal;
      break;
    }
    if (sol.pivots >= max_pivots) {
      sol.status = LpStatus::iteration_limit;
      break;
    }
    std::size_t leave = m;
    double ratio = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < m; ++r) {
      const double a = T(r, enter);
      if (a <= kPivotTol) continue;
      const double q = T(r, cols) / a;
      if (leave == m || q < ratio - 1e-14) {
        ratio = q;
        leave = r;
      } else if (q <= ratio + 1e-14) {
        const bool better = bland ? basis[r] < basis[leave] : a > T(leave, enter);
        if (better) leave = r;
      }
    }
    if (leave == m) {
      sol.status = LpStatus::unbounded;
      break;
    }
    degenerate = (ratio <= 1e-14) ? degenerate + 1 : 0;

    const double piv = T(leave, enter);
    for (std::size_t c = 0; c < width; ++c) T(leave, c) /= piv;
    T(leave, enter) = 1.0;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == leave) continue;
      const double f = T(r, enter);
      if (f == 0.0) continue;
      double* row = &t[r * width];
      const double* prow = &t[leave * width];
      for (std::size_t c = 0; c < width; ++c) row[c] -= f * prow[c];
      row[enter] = 0.0;
      if (row[cols] < 0.0 && row[cols] > -1e-13) row[cols] = 0.0;
    }
    const double f = z[enter];
    for (std::size_t c = 0; c < width; ++c) z[c] -= f * t[leave * width + c];
    z[enter] = 0.0;
    basis[leave] = enter;
    ++sol.pivots;
  }

  sol.x.assign(n, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    const std::size_t b = basis[r];
    if (b < n) sol.x[b] += T(r, cols);
    else if (b < 2 * n) sol.x[b - n] -= T(r, cols);
  }
  sol.value = 0.0;
  for (std::size_t c = 0; c < n; ++c) sol.value += lp.objective[c] * sol.x[c];
  return sol;
}

}  // namespace afprop
