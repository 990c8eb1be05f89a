#pragma once

#include <cstddef>
#include <vector>

namespace afprop {

// maximize c.x  subject to  A x <= b, x free, b >= 0 (so x = 0 is feasible).
struct LinearProgram {
  std::size_t num_vars = 0;
  std::vector<double> objective;
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;

  void add_row(std::vector<double> row, double bound);
};

enum class LpStatus { optimal, unbounded, iteration_limit };

struct LpSolution {
  LpStatus status = LpStatus::iteration_limit;
  std::vector<double> x;
  double value = 0.0;
  std::size_t pivots = 0;
};

// Dense tableau simplex. Dantzig pricing, switching to Bland's rule after a run
// of degenerate pivots so the method cannot cycle.
LpSolution solve_lp(const LinearProgram& lp, std::size_t max_pivots = 200000);

}  // namespace afprop
