#include "afprop/expectation.hpp"

#include <algorithm>

#include "afprop/error.hpp"

namespace afprop {

ExpectationOperator::ExpectationOperator(std::shared_ptr<const InductiveTower> tower, std::size_t top, std::size_t level)
    : tower_(std::move(tower)), top_(top), level_(level) {
  if (!tower_) throw ValidationError("expectation needs a tower");
  if (top_ > tower_->top_level() || level_ > top_) throw ValidationError("expectation levels out of range");
  placements_ = tower_->composite_layout(level_, top_);
  const auto& big = tower_->level(top_);
  const auto& small = tower_->level(level_);
  for (std::size_t j = 0; j < big.block_count(); ++j) weight_.push_back(tower_->trace(top_)[j] / double(big.block_dim(j)));

  unit_norms_.assign(small.block_count(), 0.0);
  std::size_t overlaps = 0;
  for (std::size_t j = 0; j < big.block_count(); ++j) {
    auto ps = placements_[j];
    std::sort(ps.begin(), ps.end(), [](const Placement& a, const Placement& b) { return a.offset < b.offset; });
    std::size_t end = 0;
    for (const auto& p : ps) {
      if (p.offset < end) ++overlaps;
      end = p.offset + small.block_dim(p.source);
      if (end > big.block_dim(j)) ++overlaps;
    }
    for (const auto& p : placements_[j]) unit_norms_[p.source] += weight_[j];
  }
  orthogonality_residual_ = double(overlaps);
  if (overlaps > 0) throw ValidationError("embedded matrix units overlap; the layout is inconsistent");
  for (double nk : unit_norms_)
    if (!(nk > 0.0)) throw ValidationError("an embedded matrix unit has zero trace norm");
}

void ExpectationOperator::check_level(const FdCStar& parent) const {
  if (!(parent == tower_->level(top_))) throw ValidationError("element does not live at the expectation's top level");
}

BlockElement ExpectationOperator::coefficients(const BlockElement& a) const {
  check_level(a.parent());
  const auto& small = tower_->level(level_);
  BlockElement c = BlockElement::zero(small);
  for (std::size_t j = 0; j < placements_.size(); ++j) {
    const auto& aj = a.block(j);
    for (const auto& p : placements_[j]) {
      const std::size_t d = small.block_dim(p.source);
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t s = 0; s < d; ++s) c.at(p.source, r, s) += weight_[j] * aj(p.offset + r, p.offset + s);
    }
  }
  for (std::size_t k = 0; k < small.block_count(); ++k) {
    const double inv = 1.0 / unit_norms_[k];
    const std::size_t d = small.block_dim(k);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t s = 0; s < d; ++s) c.at(k, r, s) *= inv;
  }
  return c;
}

BlockElement ExpectationOperator::embed_coefficients(const BlockElement& c) const {
  const auto& small = tower_->level(level_);
  if (!(c.parent() == small)) throw ValidationError("coefficients do not live at the expectation's level");
  const auto& big = tower_->level(top_);
  BlockElement out = BlockElement::zero(big);
  for (std::size_t j = 0; j < placements_.size(); ++j)
    for (const auto& p : placements_[j]) {
      const std::size_t d = small.block_dim(p.source);
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t s = 0; s < d; ++s) out.at(j, p.offset + r, p.offset + s) = c.at(p.source, r, s);
    }
  return out;
}

BlockElement ExpectationOperator::apply(const BlockElement& a) const { return embed_coefficients(coefficients(a)); }

StateVec ExpectationOperator::pullback(const StateVec& phi) const {
  check_level(phi.parent());
  const auto& small = tower_->level(level_);
  const auto& big = tower_->level(top_);
  // g_k: sum of the diagonal sub-blocks of sigma that sit over copies of block k.
  std::vector<ComplexMatrix> g;
  for (auto d : small.block_dims()) g.emplace_back(d, d);
  for (std::size_t j = 0; j < placements_.size(); ++j)
    for (const auto& p : placements_[j]) {
      const std::size_t d = small.block_dim(p.source);
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t s = 0; s < d; ++s) g[p.source](r, s) += phi.block(j)(p.offset + r, p.offset + s);
    }
  std::vector<ComplexMatrix> out;
  for (std::size_t j = 0; j < placements_.size(); ++j) {
    ComplexMatrix m(big.block_dim(j), big.block_dim(j));
    for (const auto& p : placements_[j]) {
      const std::size_t d = small.block_dim(p.source);
      const double f = weight_[j] / unit_norms_[p.source];
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t s = 0; s < d; ++s) m(p.offset + r, p.offset + s) = f * g[p.source](r, s);
    }
    out.push_back(std::move(m));
  }
  return StateVec(big, std::move(out));
}

CondExpectResult cond_expect(const ExpectationOperator& op, const BlockElement& a) {
  BlockElement c = op.coefficients(a);
  BlockElement image = op.embed_coefficients(c);
  return {std::move(image), std::move(c)};
}

std::vector<double> cantor_fast_expect(const InductiveTower& tower, std::span<const double> values, std::size_t n) {
  if (!is_cantor_tower(tower)) throw ValidationError("cantor_fast_expect needs the Cantor tower");
  const std::size_t top = tower.top_level();
  if (n > top) throw ValidationError("expectation level above the top");
  if (values.size() != (std::size_t(1) << top)) throw ValidationError("one value per top-level point expected");
  const std::size_t width = std::size_t(1) << (top - n);
  std::vector<double> out(values.size());
  for (std::size_t start = 0; start < values.size(); start += width) {
    double s = 0.0;
    for (std::size_t i = 0; i < width; ++i) s += values[start + i];
    const double avg = s / double(width);
    std::fill(out.begin() + start, out.begin() + start + width, avg);
  }
  return out;
}

}  // namespace afprop
