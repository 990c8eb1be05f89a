#pragma once

#include <cstddef>
#include <vector>

#include "afprop/linalg.hpp"

namespace afprop {

// Direct sum of full matrix algebras M(d_1) + ... + M(d_k).
class FdCStar {
 public:
  FdCStar() = default;
  explicit FdCStar(std::vector<std::size_t> block_dims);

  std::size_t block_count() const { return dims_.size(); }
  std::size_t block_dim(std::size_t i) const { return dims_.at(i); }
  const std::vector<std::size_t>& block_dims() const { return dims_; }
  std::size_t complex_dimension() const;
  bool is_abelian() const;

  bool operator==(const FdCStar&) const = default;

 private:
  std::vector<std::size_t> dims_;
};

class BlockElement {
 public:
  BlockElement() = default;
  BlockElement(FdCStar parent, std::vector<ComplexMatrix> blocks);

  static BlockElement zero(const FdCStar& parent);
  static BlockElement unit(const FdCStar& parent);
  static BlockElement scalar(const FdCStar& parent, Complex value);
  // Abelian algebras only: one value per block.
  static BlockElement diagonal_function(const FdCStar& parent, const std::vector<double>& values);

  const FdCStar& parent() const { return parent_; }
  std::size_t block_count() const { return blocks_.size(); }
  const ComplexMatrix& block(std::size_t i) const { return blocks_.at(i); }
  const std::vector<ComplexMatrix>& blocks() const { return blocks_; }
  Complex& at(std::size_t b, std::size_t r, std::size_t c) { return blocks_.at(b)(r, c); }
  Complex at(std::size_t b, std::size_t r, std::size_t c) const { return blocks_.at(b)(r, c); }

  bool operator==(const BlockElement&) const = default;

 private:
  FdCStar parent_;
  std::vector<ComplexMatrix> blocks_;
};

BlockElement mul(const BlockElement& a, const BlockElement& b);
BlockElement add(const BlockElement& a, const BlockElement& b);
BlockElement sub(const BlockElement& a, const BlockElement& b);
BlockElement adjoint(const BlockElement& a);
BlockElement scale(Complex s, const BlockElement& a);

inline BlockElement operator*(const BlockElement& a, const BlockElement& b) { return mul(a, b); }
inline BlockElement operator+(const BlockElement& a, const BlockElement& b) { return add(a, b); }
inline BlockElement operator-(const BlockElement& a, const BlockElement& b) { return sub(a, b); }
inline BlockElement operator*(Complex s, const BlockElement& a) { return scale(s, a); }

double cstar_norm(const BlockElement& a);
// Largest entry-wise |a - a*| relative to max(1, max |a|).
double self_adjoint_defect(const BlockElement& a);
bool is_self_adjoint(const BlockElement& a, double tol = 1e-12);
// Real-parts the diagonal and mirrors the upper triangle.
BlockElement hermitian_part(const BlockElement& a);

BlockElement jordan(const BlockElement& a, const BlockElement& b);
BlockElement lie(const BlockElement& a, const BlockElement& b);

// Weights of the normalized block traces: mu(a) = sum t_i Tr(a_i)/d_i.
class TraceWeights {
 public:
  TraceWeights() = default;
  explicit TraceWeights(std::vector<double> weights);

  std::size_t size() const { return w_.size(); }
  double operator[](std::size_t i) const { return w_.at(i); }
  const std::vector<double>& values() const { return w_; }

  bool operator==(const TraceWeights&) const = default;

 private:
  std::vector<double> w_;
};

Complex trace_eval(const TraceWeights& mu, const BlockElement& a);
// <x, y> = mu(y* x)
Complex inner_mu(const TraceWeights& mu, const BlockElement& x, const BlockElement& y);

// State a -> sum Tr(sigma_i a_i) with PSD density blocks of total trace one.
class StateVec {
 public:
  StateVec() = default;
  StateVec(FdCStar parent, std::vector<ComplexMatrix> density_blocks);

  const FdCStar& parent() const { return parent_; }
  const ComplexMatrix& block(std::size_t i) const { return blocks_.at(i); }
  const std::vector<ComplexMatrix>& blocks() const { return blocks_; }

 private:
  FdCStar parent_;
  std::vector<ComplexMatrix> blocks_;
};

Complex state_eval(const StateVec& phi, const BlockElement& a);
StateVec trace_state(const TraceWeights& mu, const FdCStar& parent);
// Vector state of a unit vector living in one block.
StateVec vector_state(const FdCStar& parent, std::size_t block, const std::vector<Complex>& v);
// Point mass on one block of an Abelian algebra.
StateVec point_state(const FdCStar& parent, std::size_t block);

}  // namespace afprop
