#include "afprop/cfrac.hpp"

#include <cmath>
#include <limits>

#include <boost/multiprecision/cpp_int.hpp>

#include "afprop/error.hpp"

namespace afprop {

CfExpansion convergents(const std::vector<Digit>& digits) {
  CfExpansion cf;
  cf.digits = digits;
  cf.p = {BigInt(0)};
  cf.q = {BigInt(1)};
  BigInt p_prev = 1, q_prev = 0;  // p_{-1}, q_{-1}
  for (Digit r : digits) {
    if (r == 0) throw ValidationError("continued fraction digits must be at least 1");
    const BigInt p_next = BigInt(r) * cf.p.back() + p_prev;
    const BigInt q_next = BigInt(r) * cf.q.back() + q_prev;
    p_prev = cf.p.back();
    q_prev = cf.q.back();
    cf.p.push_back(p_next);
    cf.q.push_back(q_next);
  }
  return cf;
}

BigInt convergent_determinant(const CfExpansion& cf, std::size_t n) {
  if (n == 0 || n >= cf.p.size()) throw ValidationError("determinant index out of range");
  return cf.p[n] * cf.q[n - 1] - cf.p[n - 1] * cf.q[n];
}

namespace {

// theta = num/den exactly.
void exact_fraction(double theta, BigInt& num, BigInt& den) {
  int e = 0;
  const double f = std::frexp(theta, &e);
  num = BigInt(static_cast<long long>(std::ldexp(f, 53)));
  if (e <= 53) {
    den = BigInt(1) << (53 - e);
  } else {
    num <<= (e - 53);
    den = 1;
  }
}

}  // namespace

Rational exact_rational(double x) {
  if (!std::isfinite(x)) throw ValidationError("exact_rational of a non-finite value");
  if (x == 0.0) return Rational(0);
  BigInt num, den;
  exact_fraction(std::abs(x), num, den);
  return x < 0 ? Rational(-num, den) : Rational(num, den);
}

namespace {

// Gauss map on the exact value of theta; stops early (partial) or throws at the guard.
std::vector<Digit> expand(double theta, std::size_t depth, double guard, bool partial) {
  if (!(theta > 0.0 && theta < 1.0)) throw ValidationError("cf_expand needs theta in (0,1)");
  if (!(guard > 0.0)) throw ValidationError("cf_expand guard must be positive");
  BigInt num, den;
  exact_fraction(theta, num, den);
  const Rational g(guard);
  std::vector<Digit> digits;
  for (std::size_t i = 0; i < depth; ++i) {
    if (num == 0 || Rational(num, den) < g) {
      if (partial) break;
      throw NumericalError("insufficient precision: theta is within " + std::to_string(guard) +
                           " of a rational at depth " + std::to_string(i + 1));
    }
    const BigInt r = den / num;
    if (r > BigInt(std::numeric_limits<Digit>::max())) throw NumericalError("continued fraction digit overflow");
    digits.push_back(static_cast<Digit>(r));
    const BigInt rem = den % num;
    den = num;
    num = rem;
  }
  return digits;
}

}  // namespace

std::vector<Digit> cf_expand(double theta, std::size_t depth, double guard) {
  return expand(theta, depth, guard, false);
}

std::vector<Digit> cf_expand_partial(double theta, std::size_t max_depth, double guard) {
  return expand(theta, max_depth, guard, true);
}

double convergent_gap(double theta, const CfExpansion& cf, std::size_t n) {
  if (n >= cf.p.size()) throw ValidationError("convergent index out of range");
  BigInt num, den;
  exact_fraction(theta, num, den);
  return Rational(num * cf.q[n] - cf.p[n] * den, den * cf.q[n]).convert_to<double>();
}

double cf_value_golden_tail(const std::vector<Digit>& digits) {
  const CfExpansion cf = convergents(digits);
  const std::size_t n = digits.size();
  const long double x = (1.0L + std::sqrt(5.0L)) / 2.0L;
  if (n == 0) return static_cast<double>(1.0L / x);
  const long double pn = cf.p[n].convert_to<long double>();
  const long double qn = cf.q[n].convert_to<long double>();
  const long double pm = cf.p[n - 1].convert_to<long double>();
  const long double qm = cf.q[n - 1].convert_to<long double>();
  return static_cast<double>((x * pn + pm) / (x * qn + qm));
}

BaireDistance baire_distance(const std::vector<Digit>& x, const std::vector<Digit>& y) {
  const std::size_t span = std::min(x.size(), y.size());
  for (std::size_t i = 0; i < span; ++i)
    if (x[i] != y[i]) return {std::ldexp(1.0, -static_cast<int>(i)), true};
  if (x.size() == y.size()) return {0.0, true};
  return {std::ldexp(1.0, -static_cast<int>(span)), false};
}

BaireBox::BaireBox(std::vector<Digit> lo, std::vector<std::optional<Digit>> up, std::optional<Digit> tail)
    : lower(std::move(lo)), upper(std::move(up)), tail_upper(tail) {
  if (lower.size() != upper.size()) throw ValidationError("box bounds must have equal length");
  for (std::size_t i = 0; i < lower.size(); ++i)
    if (upper[i] && *upper[i] < lower[i]) throw ValidationError("box lower bound exceeds upper bound");
}

BoxPredicates box_predicates(const BaireBox& box) {
  bool bounded = box.tail_upper.has_value();
  for (const auto& u : box.upper) bounded = bounded && u.has_value();
  return {true, bounded};
}

}  // namespace afprop
