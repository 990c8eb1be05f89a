#pragma once

#include <string>
#include <vector>

#include "afprop/mk.hpp"

namespace afprop {

// Finite representative (z_0, ..., z_{N-1}) of a point of the Cantor set.
class CantorPoint {
 public:
  explicit CantorPoint(std::vector<int> bits);
  static CantorPoint parse(const std::string& bits);  // "0110..."

  std::size_t size() const { return bits_.size(); }
  int operator[](std::size_t i) const { return bits_.at(i); }
  const std::vector<int>& bits() const { return bits_; }
  // Block index at level n, z_0 as the most significant bit.
  std::size_t index(std::size_t n) const;
  std::string str() const;

 private:
  std::vector<int> bits_;
};

struct OracleValue {
  double value;         // 2 beta(first disagreement), or 0 when equal on the span
  bool equal_on_span;
  double upper_bound;   // 2 beta(span) when equal on the span, else value
  std::size_t first_disagreement;  // span when equal
};

OracleValue cantor_oracle(const CantorPoint& x, const CantorPoint& y, const BetaSequence& beta);

// u_n = 2 eta_n - 1 at level N: -1 where z_n = 0, +1 where z_n = 1.
BlockElement u_element(std::size_t n, std::size_t level);
// prod_{n in F} u_n at level N.
BlockElement u_product(const std::vector<std::size_t>& indices, std::size_t level);

StateVec point_evaluation(const CantorPoint& x, std::size_t level);

struct MkOracleReport {
  double mk;
  double oracle;
  double gap;
  bool equal_on_span;
  bool pass;
};

MkOracleReport verify_mk_vs_oracle(std::size_t level, const BetaSequence& beta, const CantorPoint& x,
                                   const CantorPoint& y, double tol);

}  // namespace afprop
