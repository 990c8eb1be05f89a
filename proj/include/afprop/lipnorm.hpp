#pragma once

#include <memory>
#include <vector>

#include "afprop/expectation.hpp"

namespace afprop {

// lip(a) = max_{n < N} ||a - E_n a|| / beta(n) on self-adjoint a at level N.
class LipData {
 public:
  LipData(const InductiveTower& tower, const BetaSequence& beta, std::size_t top);
  LipData(const BuiltTower& built, std::size_t top) : LipData(built.tower, built.beta, top) {}
  explicit LipData(const BuiltTower& built) : LipData(built.tower, built.beta, built.tower.top_level()) {}

  const InductiveTower& tower() const { return *tower_; }
  std::shared_ptr<const InductiveTower> tower_ptr() const { return tower_; }
  const BetaSequence& beta() const { return beta_; }
  std::size_t top() const { return top_; }
  const FdCStar& algebra() const { return tower_->level(top_); }
  const TraceWeights& trace() const { return tower_->trace(top_); }
  const ExpectationOperator& expectation(std::size_t n) const { return expectations_.at(n); }

  // ||a - E_n a|| for n = 0..N-1.
  std::vector<double> deviations(const BlockElement& a) const;

 private:
  std::shared_ptr<const InductiveTower> tower_;
  BetaSequence beta_;
  std::size_t top_;
  std::vector<ExpectationOperator> expectations_;  // n = 0..N-1
};

inline constexpr double kSelfAdjointTol = 1e-12;

double lip(const LipData& L, const BlockElement& a);

struct QuasiLeibnizMargin {
  double jordan;
  double lie;
};

// 2(||a|| lip(b) + ||b|| lip(a)) - lip(product), for the Jordan and Lie products.
QuasiLeibnizMargin quasi_leibniz_margin(const LipData& L, const BlockElement& a, const BlockElement& b);

// K with |lip(a) - lip(b)| <= K ||a - b||.
double lip_lipschitz_constant(const LipData& L);

}  // namespace afprop
