#include "afprop/random.hpp"

namespace afprop {

ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      const double re = g(rng);
      const double im = g(rng);
      m(r, c) = Complex(re, im);
    }
  return m;
}

ComplexMatrix random_hermitian(std::size_t n, Rng& rng) {
  const ComplexMatrix g = random_matrix(n, n, rng);
  ComplexMatrix h(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    h(r, r) = g(r, r).real();
    for (std::size_t c = r + 1; c < n; ++c) {
      h(r, c) = g(r, c);
      h(c, r) = std::conj(g(r, c));
    }
  }
  return h;
}

BlockElement random_element(const FdCStar& parent, Rng& rng) {
  std::vector<ComplexMatrix> blocks;
  for (auto d : parent.block_dims()) blocks.push_back(random_matrix(d, d, rng));
  return BlockElement(parent, std::move(blocks));
}

BlockElement random_self_adjoint(const FdCStar& parent, Rng& rng) {
  std::vector<ComplexMatrix> blocks;
  for (auto d : parent.block_dims()) blocks.push_back(random_hermitian(d, rng));
  return BlockElement(parent, std::move(blocks));
}

BlockElement random_positive(const FdCStar& parent, Rng& rng) {
  std::vector<ComplexMatrix> blocks;
  for (auto d : parent.block_dims()) {
    const ComplexMatrix g = random_matrix(d, d, rng);
    blocks.push_back(g * g.adjoint());
  }
  return hermitian_part(BlockElement(parent, std::move(blocks)));
}

StateVec random_state(const FdCStar& parent, Rng& rng) {
  const BlockElement p = random_positive(parent, rng);
  double total = 0.0;
  for (const auto& m : p.blocks()) total += m.trace().real();
  std::vector<ComplexMatrix> blocks;
  for (const auto& m : p.blocks()) blocks.push_back(Complex(1.0 / total) * m);
  return StateVec(parent, std::move(blocks));
}

}  // namespace afprop
