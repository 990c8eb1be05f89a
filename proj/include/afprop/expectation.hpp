#pragma once

#include <memory>
#include <span>
#include <vector>

#include "afprop/tower.hpp"

namespace afprop {

// Trace-preserving conditional expectation from level N onto the image of level n.
// E(a) = sum_l mu(f_l* a)/mu(f_l* f_l) f_l over the embedded matrix units f_l.
class ExpectationOperator {
 public:
  ExpectationOperator(std::shared_ptr<const InductiveTower> tower, std::size_t top, std::size_t level);

  const InductiveTower& tower() const { return *tower_; }
  std::size_t top() const { return top_; }
  std::size_t level() const { return level_; }
  const std::vector<std::vector<Placement>>& placements() const { return placements_; }
  // mu(f* f), shared by every matrix unit of a level-n block.
  const std::vector<double>& unit_norms() const { return unit_norms_; }
  // 0 when the embedded units have pairwise disjoint supports.
  double orthogonality_residual() const { return orthogonality_residual_; }

  BlockElement coefficients(const BlockElement& a) const;  // at level n
  BlockElement apply(const BlockElement& a) const;         // at level N
  BlockElement embed_coefficients(const BlockElement& c) const;
  // The state a -> phi(E(a)).
  StateVec pullback(const StateVec& phi) const;

 private:
  void check_level(const FdCStar& parent) const;

  std::shared_ptr<const InductiveTower> tower_;
  std::size_t top_;
  std::size_t level_;
  std::vector<std::vector<Placement>> placements_;
  std::vector<double> weight_;  // t_J / d_J at level N
  std::vector<double> unit_norms_;
  double orthogonality_residual_ = 0.0;
};

struct CondExpectResult {
  BlockElement image;         // level N
  BlockElement coefficients;  // level n
};

CondExpectResult cond_expect(const ExpectationOperator& op, const BlockElement& a);

// Cylinder averages on the Cantor tower; values indexed with z_0 as the top bit.
std::vector<double> cantor_fast_expect(const InductiveTower& tower, std::span<const double> values, std::size_t n);

}  // namespace afprop
