#include "afprop/cantor.hpp"

#include <cmath>

#include "afprop/error.hpp"

namespace afprop {

CantorPoint::CantorPoint(std::vector<int> bits) : bits_(std::move(bits)) {
  for (int b : bits_)
    if (b != 0 && b != 1) throw ValidationError("Cantor point entries must be 0 or 1");
}

CantorPoint CantorPoint::parse(const std::string& s) {
  std::vector<int> bits;
  for (char c : s) {
    if (c != '0' && c != '1') throw ValidationError("Cantor point \"" + s + "\" must be a 0/1 string");
    bits.push_back(c - '0');
  }
  return CantorPoint(std::move(bits));
}

std::size_t CantorPoint::index(std::size_t n) const {
  if (n > bits_.size()) throw ValidationError("Cantor point is shorter than the requested level");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < n; ++i) idx = (idx << 1) | std::size_t(bits_[i]);
  return idx;
}

std::string CantorPoint::str() const {
  std::string s;
  for (int b : bits_) s += char('0' + b);
  return s;
}

OracleValue cantor_oracle(const CantorPoint& x, const CantorPoint& y, const BetaSequence& beta) {
  beta.require_decreasing();
  const std::size_t span = std::min(x.size(), y.size());
  for (std::size_t n = 0; n < span; ++n) {
    if (x[n] != y[n]) {
      if (n >= beta.size()) throw ValidationError("beta is too short for the first disagreement");
      const double v = 2.0 * beta[n];
      return {v, false, v, n};
    }
  }
  const double ub = span < beta.size() ? 2.0 * beta[span] : 2.0 * beta[beta.size() - 1];
  return {0.0, true, ub, span};
}

BlockElement u_element(std::size_t n, std::size_t level) {
  if (n >= level) throw ValidationError("u_n needs n below the level");
  if (level > 20) throw ValidationError("Cantor level beyond 20 is out of scope");
  const std::size_t P = std::size_t(1) << level;
  std::vector<double> v(P);
  for (std::size_t p = 0; p < P; ++p) v[p] = ((p >> (level - 1 - n)) & 1) ? 1.0 : -1.0;
  return BlockElement::diagonal_function(FdCStar(std::vector<std::size_t>(P, 1)), v);
}

BlockElement u_product(const std::vector<std::size_t>& indices, std::size_t level) {
  BlockElement out = BlockElement::unit(FdCStar(std::vector<std::size_t>(std::size_t(1) << level, 1)));
  for (auto n : indices) out = mul(out, u_element(n, level));
  return out;
}

StateVec point_evaluation(const CantorPoint& x, std::size_t level) {
  if (x.size() < level) throw ValidationError("Cantor point is shorter than the level");
  const FdCStar alg(std::vector<std::size_t>(std::size_t(1) << level, 1));
  return point_state(alg, x.index(level));
}

MkOracleReport verify_mk_vs_oracle(std::size_t level, const BetaSequence& beta, const CantorPoint& x,
                                   const CantorPoint& y, double tol) {
  beta.require_decreasing();
  const auto built = cantor_tower(level, beta);
  const LipData L(built);
  const auto px = point_evaluation(x, level), py = point_evaluation(y, level);
  const MkResult r = mk_abelian(L, px, py);
  // Restrict the oracle to the truncation span.
  const CantorPoint xs(std::vector<int>(x.bits().begin(), x.bits().begin() + level));
  const CantorPoint ys(std::vector<int>(y.bits().begin(), y.bits().begin() + level));
  const OracleValue o = cantor_oracle(xs, ys, built.beta);
  const double gap = std::abs(r.value() - o.value);
  return {r.value(), o.value, gap, o.equal_on_span, gap <= tol};
}

}  // namespace afprop
