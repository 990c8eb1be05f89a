#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "afprop/algebra.hpp"
#include "afprop/cfrac.hpp"

namespace afprop {

// For each target block, the ordered source blocks placed down its diagonal.
class EmbeddingLayout {
 public:
  EmbeddingLayout() = default;
  explicit EmbeddingLayout(std::vector<std::vector<std::size_t>> targets);

  std::size_t target_count() const { return targets_.size(); }
  const std::vector<std::size_t>& sources_of(std::size_t target) const { return targets_.at(target); }
  const std::vector<std::vector<std::size_t>>& targets() const { return targets_; }
  // Occurrences of source i in target j.
  std::size_t multiplicity(std::size_t target, std::size_t source) const;

  bool operator==(const EmbeddingLayout&) const = default;

 private:
  std::vector<std::vector<std::size_t>> targets_;
};

struct Placement {
  std::size_t source;
  std::size_t offset;
  bool operator==(const Placement&) const = default;
};

class InductiveTower {
 public:
  InductiveTower() = default;
  // Checks shapes and unitality; injectivity and trace consistency are left to validate().
  InductiveTower(std::vector<FdCStar> levels, std::vector<EmbeddingLayout> layouts,
                 std::vector<TraceWeights> traces, std::string label = "");

  std::size_t top_level() const { return levels_.size() - 1; }
  const FdCStar& level(std::size_t n) const { return levels_.at(n); }
  const std::vector<FdCStar>& levels() const { return levels_; }
  const EmbeddingLayout& layout(std::size_t n) const { return layouts_.at(n); }  // n -> n+1
  const std::vector<EmbeddingLayout>& layouts() const { return layouts_; }
  const TraceWeights& trace(std::size_t n) const { return traces_.at(n); }
  const std::vector<TraceWeights>& traces() const { return traces_; }
  const std::string& label() const { return label_; }

  bool is_abelian() const { return levels_.back().is_abelian(); }

  // Per block of level `to`, the copies of level-`from` blocks on its diagonal.
  std::vector<std::vector<Placement>> composite_layout(std::size_t from, std::size_t to) const;
  BlockElement embed(const BlockElement& a, std::size_t from, std::size_t to) const;

  // Levels 0..top with the same data.
  InductiveTower truncated(std::size_t top) const;

 private:
  std::vector<FdCStar> levels_;
  std::vector<EmbeddingLayout> layouts_;
  std::vector<TraceWeights> traces_;
  std::string label_;
};

struct Violation {
  std::size_t level;
  std::string kind;  // "unital" | "injective" | "trace-consistency"
  double residual;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  double max_trace_residual = 0.0;
  bool ok() const { return violations.empty(); }
};

inline constexpr double kTraceConsistencyTol = 1e-10;

ValidationReport validate(const InductiveTower& tower);

class BetaSequence {
 public:
  BetaSequence() = default;
  explicit BetaSequence(std::vector<double> values, std::string rule = "explicit",
                        std::optional<double> k = std::nullopt);

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t n) const { return values_.at(n); }
  const std::vector<double>& values() const { return values_; }
  const std::string& rule() const { return rule_; }
  std::optional<double> k() const { return k_; }

  bool is_decreasing() const;  // strictly
  void require_decreasing() const;
  BetaSequence truncated(std::size_t top) const;

 private:
  std::vector<double> values_;
  std::string rule_;
  std::optional<double> k_;
};

struct BuiltTower {
  InductiveTower tower;
  BetaSequence beta;
};

// Product of (m_j + 1) over j < n.
std::vector<std::size_t> uhf_sizes(const std::vector<Digit>& mult, std::size_t depth);
BuiltTower uhf_tower(const std::vector<Digit>& mult, std::size_t depth, double k);

inline constexpr double kMaxEffrosShenDenominator = 1e7;

// t(theta, n) for n = 1..N, t[0] = 1.
std::vector<double> effros_shen_weights(const CfExpansion& cf, double theta);
BuiltTower effros_shen_tower(const std::vector<Digit>& digits, double theta, double k);

BetaSequence cantor_beta(double r, std::size_t depth);  // beta(n) = r^-n / 2
BuiltTower cantor_tower(std::size_t depth, BetaSequence beta);
bool is_cantor_tower(const InductiveTower& tower);

// beta(n) = 1/dim(A_n)^k with dim the complex dimension.
BetaSequence dim_power_beta(const InductiveTower& tower, double k);

}  // namespace afprop
