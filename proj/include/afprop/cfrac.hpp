#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace afprop {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Digit = std::uint64_t;

// The binary value of x as an exact fraction.
Rational exact_rational(double x);

// theta = 1/(r_1 + 1/(r_2 + ...)), with p_0/q_0 = 0/1 and p_1/q_1 = 1/r_1.
struct CfExpansion {
  std::vector<Digit> digits;  // r_1..r_N
  std::vector<BigInt> p;      // p_0..p_N
  std::vector<BigInt> q;      // q_0..q_N
};

CfExpansion convergents(const std::vector<Digit>& digits);

// p_n q_{n-1} - p_{n-1} q_n for n >= 1.
BigInt convergent_determinant(const CfExpansion& cf, std::size_t n);

inline constexpr double kCfGuard = 1e-12;

// Digits of the double theta, by exact Euclid on its binary value. Throws
// NumericalError when a remainder drops below guard before depth is reached.
std::vector<Digit> cf_expand(double theta, std::size_t depth, double guard = kCfGuard);

// As many digits as the guard allows, at most max_depth.
std::vector<Digit> cf_expand_partial(double theta, std::size_t max_depth, double guard = kCfGuard);

// theta - p_n/q_n evaluated exactly from the double theta, rounded at the end.
double convergent_gap(double theta, const CfExpansion& cf, std::size_t n);

// An irrational with the given leading digits followed by 1,1,1,...
double cf_value_golden_tail(const std::vector<Digit>& digits);

struct BaireDistance {
  double value;     // exact when determined, else the witnessed upper bound
  bool determined;
};

// 2^-(first disagreement). Equal prefixes of equal length give 0; equal
// prefixes of different lengths are undetermined.
BaireDistance baire_distance(const std::vector<Digit>& x, const std::vector<Digit>& y);

// { x : lower(n) <= x(n) <= upper(n) } for n < N, with tail rule beyond N.
struct BaireBox {
  std::vector<Digit> lower;
  std::vector<std::optional<Digit>> upper;  // nullopt = unbounded
  std::optional<Digit> tail_upper;          // entries past N lie in [1, tail_upper]; nullopt = unbounded

  BaireBox(std::vector<Digit> lower, std::vector<std::optional<Digit>> upper, std::optional<Digit> tail_upper);
};

struct BoxPredicates {
  bool closed;
  bool totally_bounded;
};

BoxPredicates box_predicates(const BaireBox& box);

}  // namespace afprop
