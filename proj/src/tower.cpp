#include "afprop/tower.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "afprop/error.hpp"

namespace afprop {

EmbeddingLayout::EmbeddingLayout(std::vector<std::vector<std::size_t>> targets) : targets_(std::move(targets)) {}

std::size_t EmbeddingLayout::multiplicity(std::size_t target, std::size_t source) const {
  std::size_t m = 0;
  for (auto s : targets_.at(target))
    if (s == source) ++m;
  return m;
}

InductiveTower::InductiveTower(std::vector<FdCStar> levels, std::vector<EmbeddingLayout> layouts,
                               std::vector<TraceWeights> traces, std::string label)
    : levels_(std::move(levels)), layouts_(std::move(layouts)), traces_(std::move(traces)), label_(std::move(label)) {
  if (levels_.empty()) throw ValidationError("a tower needs at least one level");
  if (levels_[0].block_dims() != std::vector<std::size_t>{1}) throw ValidationError("level 0 must be the scalars");
  if (layouts_.size() + 1 != levels_.size()) throw ValidationError("one layout per consecutive pair of levels expected");
  if (traces_.size() != levels_.size()) throw ValidationError("one trace per level expected");
  for (std::size_t n = 0; n < levels_.size(); ++n)
    if (traces_[n].size() != levels_[n].block_count())
      throw ValidationError("trace at level " + std::to_string(n) + " has the wrong number of weights");
  for (std::size_t n = 0; n < layouts_.size(); ++n) {
    const auto& from = levels_[n];
    const auto& to = levels_[n + 1];
    if (layouts_[n].target_count() != to.block_count())
      throw ValidationError("layout " + std::to_string(n) + " has the wrong number of target blocks");
    for (std::size_t j = 0; j < to.block_count(); ++j) {
      std::size_t sum = 0;
      for (auto s : layouts_[n].sources_of(j)) {
        if (s >= from.block_count())
          throw ValidationError("layout " + std::to_string(n) + " names a missing source block");
        sum += from.block_dim(s);
      }
      if (sum != to.block_dim(j))
        throw ValidationError("layout " + std::to_string(n) + " is not unital at target block " + std::to_string(j));
    }
  }
}

std::vector<std::vector<Placement>> InductiveTower::composite_layout(std::size_t from, std::size_t to) const {
  if (from > to || to > top_level()) throw ValidationError("embedding levels out of range");
  std::vector<std::vector<Placement>> cur(levels_[from].block_count());
  for (std::size_t k = 0; k < cur.size(); ++k) cur[k] = {{k, 0}};
  for (std::size_t m = from; m < to; ++m) {
    std::vector<std::vector<Placement>> next(levels_[m + 1].block_count());
    for (std::size_t j = 0; j < next.size(); ++j) {
      std::size_t off = 0;
      for (auto s : layouts_[m].sources_of(j)) {
        for (const auto& p : cur[s]) next[j].push_back({p.source, off + p.offset});
        off += levels_[m].block_dim(s);
      }
    }
    cur = std::move(next);
  }
  return cur;
}

BlockElement InductiveTower::embed(const BlockElement& a, std::size_t from, std::size_t to) const {
  if (from > top_level() || to > top_level() || from > to) throw ValidationError("embedding levels out of range");
  if (!(a.parent() == levels_[from])) throw ValidationError("element does not live at the source level");
  if (from == to) return a;
  const auto placements = composite_layout(from, to);
  const auto& target = levels_[to];
  std::vector<ComplexMatrix> blocks;
  blocks.reserve(target.block_count());
  for (std::size_t j = 0; j < target.block_count(); ++j) {
    ComplexMatrix m(target.block_dim(j), target.block_dim(j));
    for (const auto& p : placements[j]) {
      const auto& src = a.block(p.source);
      for (std::size_t r = 0; r < src.rows(); ++r)
        for (std::size_t c = 0; c < src.cols(); ++c) m(p.offset + r, p.offset + c) = src(r, c);
    }
    blocks.push_back(std::move(m));
  }
  return BlockElement(target, std::move(blocks));
}

InductiveTower InductiveTower::truncated(std::size_t top) const {
  if (top > top_level()) throw ValidationError("truncation above the top level");
  return InductiveTower({levels_.begin(), levels_.begin() + top + 1}, {layouts_.begin(), layouts_.begin() + top},
                        {traces_.begin(), traces_.begin() + top + 1}, label_);
}

ValidationReport validate(const InductiveTower& tower) {
  ValidationReport report;
  for (std::size_t n = 0; n < tower.top_level(); ++n) {
    const auto& from = tower.level(n);
    const auto& to = tower.level(n + 1);
    const auto& lay = tower.layout(n);
    for (std::size_t j = 0; j < to.block_count(); ++j) {
      std::size_t sum = 0;
      for (auto s : lay.sources_of(j)) sum += from.block_dim(s);
      if (sum != to.block_dim(j))
        report.violations.push_back({n, "unital", std::abs(double(sum) - double(to.block_dim(j))),
                                     "target block " + std::to_string(j) + " is not filled"});
    }
    for (std::size_t i = 0; i < from.block_count(); ++i) {
      std::size_t seen = 0;
      for (std::size_t j = 0; j < to.block_count(); ++j) seen += lay.multiplicity(j, i);
      if (seen == 0)
        report.violations.push_back({n, "injective", 1.0, "source block " + std::to_string(i) + " is dropped"});
    }
    double worst = 0.0;
    std::size_t worst_block = 0;
    for (std::size_t i = 0; i < from.block_count(); ++i) {
      const double lhs = tower.trace(n)[i] / double(from.block_dim(i));
      double rhs = 0.0;
      for (std::size_t j = 0; j < to.block_count(); ++j)
        rhs += double(lay.multiplicity(j, i)) * tower.trace(n + 1)[j] / double(to.block_dim(j));
      const double res = std::abs(lhs - rhs);
      if (res > worst) {
        worst = res;
        worst_block = i;
      }
    }
    report.max_trace_residual = std::max(report.max_trace_residual, worst);
    if (worst > kTraceConsistencyTol) {
      std::ostringstream msg;
      msg << "trace at level " << n << " block " << worst_block << " disagrees with the pullback from level " << n + 1;
      report.violations.push_back({n, "trace-consistency", worst, msg.str()});
    }
  }
  return report;
}

BetaSequence::BetaSequence(std::vector<double> values, std::string rule, std::optional<double> k)
    : values_(std::move(values)), rule_(std::move(rule)), k_(k) {
  if (values_.empty()) throw ValidationError("beta needs at least one value");
  for (double b : values_)
    if (!(b > 0.0) || !std::isfinite(b)) throw ValidationError("beta values must be positive and finite");
}

bool BetaSequence::is_decreasing() const {
  for (std::size_t n = 1; n < values_.size(); ++n)
    if (!(values_[n] < values_[n - 1])) return false;
  return true;
}

void BetaSequence::require_decreasing() const {
  if (!is_decreasing()) throw ValidationError("beta must be strictly decreasing");
}

BetaSequence BetaSequence::truncated(std::size_t top) const {
  if (top >= values_.size()) throw ValidationError("beta is too short for the requested level");
  return BetaSequence({values_.begin(), values_.begin() + top + 1}, rule_, k_);
}

std::vector<std::size_t> uhf_sizes(const std::vector<Digit>& mult, std::size_t depth) {
  if (depth > mult.size()) throw ValidationError("UHF depth exceeds the multiplicity list");
  std::vector<std::size_t> sizes{1};
  for (std::size_t j = 0; j < depth; ++j) {
    if (mult[j] == 0) throw ValidationError("UHF entries must be at least 1");
    const double next = double(sizes.back()) * (double(mult[j]) + 1.0);
    if (next > 4096.0) throw ValidationError("UHF block size beyond 4096 is out of scope");
    sizes.push_back(sizes.back() * static_cast<std::size_t>(mult[j] + 1));
  }
  return sizes;
}

BuiltTower uhf_tower(const std::vector<Digit>& mult, std::size_t depth, double k) {
  if (!(k > 0.0)) throw ValidationError("k must be positive");
  const auto sizes = uhf_sizes(mult, depth);
  std::vector<FdCStar> levels;
  std::vector<EmbeddingLayout> layouts;
  std::vector<TraceWeights> traces;
  std::vector<double> beta;
  for (std::size_t n = 0; n <= depth; ++n) {
    levels.emplace_back(std::vector<std::size_t>{sizes[n]});
    traces.emplace_back(std::vector<double>{1.0});
    beta.push_back(std::pow(double(sizes[n]), -k));
    if (n < depth) layouts.emplace_back(std::vector<std::vector<std::size_t>>{std::vector<std::size_t>(mult[n] + 1, 0)});
  }
  return {InductiveTower(std::move(levels), std::move(layouts), std::move(traces), "uhf"),
          BetaSequence(std::move(beta), "uhf-size-power", k)};
}

std::vector<double> effros_shen_weights(const CfExpansion& cf, double theta) {
  const Rational th = exact_rational(theta);
  std::vector<double> t{1.0};
  for (std::size_t n = 1; n < cf.q.size(); ++n) {
    Rational v = Rational(cf.q[n]) * (th * Rational(cf.q[n - 1]) - Rational(cf.p[n - 1]));
    if (n % 2 == 0) v = -v;
    t.push_back(v.convert_to<double>());
  }
  return t;
}

BuiltTower effros_shen_tower(const std::vector<Digit>& digits, double theta, double k) {
  if (!(theta > 0.0 && theta < 1.0)) throw ValidationError("theta must lie in (0,1)");
  if (!(k > 0.0)) throw ValidationError("k must be positive");
  const CfExpansion cf = convergents(digits);
  const std::size_t depth = digits.size();
  if (cf.q.back() > BigInt(static_cast<long long>(kMaxEffrosShenDenominator)))
    throw NumericalError("q_N exceeds 1e7; theta roundoff would spoil the trace weights at this depth");
  if (depth > 0) {
    // theta must lie strictly inside the cylinder of the given digits.
    const Rational th = exact_rational(theta);
    const Rational a(cf.p[depth], cf.q[depth]);
    const Rational b(cf.p[depth] + cf.p[depth - 1], cf.q[depth] + cf.q[depth - 1]);
    const bool inside = (a < b) ? (a < th && th < b) : (b < th && th < a);
    if (!inside) throw InconsistencyError("theta lies outside the convergent bracket of the given digits");
  }
  const auto t = effros_shen_weights(cf, theta);
  std::vector<FdCStar> levels{FdCStar({1})};
  std::vector<TraceWeights> traces{TraceWeights({1.0})};
  std::vector<EmbeddingLayout> layouts;
  std::vector<double> beta{1.0};
  for (std::size_t n = 1; n <= depth; ++n) {
    if (!(t[n] > 0.0 && t[n] < 1.0)) throw NumericalError("Effros-Shen trace weight left (0,1)");
    const auto qn = cf.q[n].convert_to<std::size_t>();
    const auto qm = cf.q[n - 1].convert_to<std::size_t>();
    levels.emplace_back(std::vector<std::size_t>{qn, qm});
    traces.emplace_back(std::vector<double>{t[n], 1.0 - t[n]});
    beta.push_back(std::pow(double(qn) * double(qn) + double(qm) * double(qm), -k));
    std::vector<std::size_t> first;
    if (n == 1) {
      first.assign(digits[0], 0);
      layouts.emplace_back(std::vector<std::vector<std::size_t>>{first, {0}});
    } else {
      first.assign(digits[n - 1], 0);
      first.push_back(1);
      layouts.emplace_back(std::vector<std::vector<std::size_t>>{first, {0}});
    }
  }
  return {InductiveTower(std::move(levels), std::move(layouts), std::move(traces), "effros-shen"),
          BetaSequence(std::move(beta), "dim-power", k)};
}

BetaSequence cantor_beta(double r, std::size_t depth) {
  if (!(r > 1.0)) throw ValidationError("the Cantor ratio r must exceed 1");
  std::vector<double> v;
  for (std::size_t n = 0; n <= depth; ++n) v.push_back(0.5 * std::pow(r, -double(n)));
  return BetaSequence(std::move(v), "cantor-r", r);
}

BuiltTower cantor_tower(std::size_t depth, BetaSequence beta) {
  if (depth > 20) throw ValidationError("Cantor depth beyond 20 is out of scope");
  if (beta.size() < depth + 1) throw ValidationError("beta needs at least depth+1 entries");
  std::vector<FdCStar> levels;
  std::vector<EmbeddingLayout> layouts;
  std::vector<TraceWeights> traces;
  for (std::size_t n = 0; n <= depth; ++n) {
    const std::size_t count = std::size_t(1) << n;
    levels.emplace_back(std::vector<std::size_t>(count, 1));
    traces.emplace_back(std::vector<double>(count, 1.0 / double(count)));
    if (n < depth) {
      std::vector<std::vector<std::size_t>> targets(2 * count);
      for (std::size_t j = 0; j < 2 * count; ++j) targets[j] = {j >> 1};
      layouts.emplace_back(std::move(targets));
    }
  }
  return {InductiveTower(std::move(levels), std::move(layouts), std::move(traces), "cantor"), beta.truncated(depth)};
}

bool is_cantor_tower(const InductiveTower& tower) {
  for (std::size_t n = 0; n <= tower.top_level(); ++n) {
    const auto& lv = tower.level(n);
    if (lv.block_count() != (std::size_t(1) << n) || !lv.is_abelian()) return false;
    for (std::size_t i = 0; i < lv.block_count(); ++i)
      if (tower.trace(n)[i] != 1.0 / double(lv.block_count())) return false;
    if (n < tower.top_level())
      for (std::size_t j = 0; j < tower.level(n + 1).block_count(); ++j)
        if (tower.layout(n).sources_of(j) != std::vector<std::size_t>{j >> 1}) return false;
  }
  return true;
}

BetaSequence dim_power_beta(const InductiveTower& tower, double k) {
  if (!(k > 0.0)) throw ValidationError("k must be positive");
  std::vector<double> v;
  for (const auto& lv : tower.levels()) v.push_back(std::pow(double(lv.complex_dimension()), -k));
  return BetaSequence(std::move(v), "dim-power", k);
}

}  // namespace afprop
