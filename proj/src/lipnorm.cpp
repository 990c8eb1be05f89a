#include "afprop/lipnorm.hpp"

#include <algorithm>

#include "afprop/error.hpp"

namespace afprop {

LipData::LipData(const InductiveTower& tower, const BetaSequence& beta, std::size_t top)
    : tower_(std::make_shared<const InductiveTower>(tower)), beta_(beta), top_(top) {
  if (top_ > tower_->top_level()) throw ValidationError("Lip-norm level above the tower's top");
  if (beta_.size() < top_ + 1) throw ValidationError("beta needs a value for every level up to the top");
  beta_ = beta_.truncated(top_);
  for (std::size_t n = 0; n < top_; ++n) expectations_.emplace_back(tower_, top_, n);
}

std::vector<double> LipData::deviations(const BlockElement& a) const {
  std::vector<double> out;
  out.reserve(top_);
  for (const auto& e : expectations_) out.push_back(cstar_norm(hermitian_part(a - e.apply(a))));
  return out;
}

namespace {

bool is_real_scalar(const BlockElement& a) {
  const Complex s = a.block(0)(0, 0);
  if (s.imag() != 0.0) return false;
  for (const auto& m : a.blocks())
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c)
        if (m(r, c) != (r == c ? s : Complex(0.0))) return false;
  return true;
}

}  // namespace

double lip(const LipData& L, const BlockElement& a) {
  if (!(a.parent() == L.algebra())) throw ValidationError("element does not live at the Lip-norm's level");
  if (!is_self_adjoint(a, kSelfAdjointTol)) throw ValidationError("the Lip-norm is defined on self-adjoint elements only");
  if (is_real_scalar(a)) return 0.0;
  const auto dev = L.deviations(a);
  double m = 0.0;
  for (std::size_t n = 0; n < dev.size(); ++n) m = std::max(m, dev[n] / L.beta()[n]);
  return m;
}

QuasiLeibnizMargin quasi_leibniz_margin(const LipData& L, const BlockElement& a, const BlockElement& b) {
  const double la = lip(L, a), lb = lip(L, b);
  const double budget = 2.0 * (cstar_norm(a) * lb + cstar_norm(b) * la);
  return {budget - lip(L, hermitian_part(jordan(a, b))), budget - lip(L, hermitian_part(lie(a, b)))};
}

double lip_lipschitz_constant(const LipData& L) {
  const auto& v = L.beta().values();
  return 2.0 / *std::min_element(v.begin(), v.end());
}

}  // namespace afprop
