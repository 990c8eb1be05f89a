#pragma once

#include <cstdint>
#include <random>

#include "afprop/algebra.hpp"

namespace afprop {

using Rng = std::mt19937_64;

ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng);
// Gaussian entries, Hermitian part.
ComplexMatrix random_hermitian(std::size_t n, Rng& rng);

BlockElement random_element(const FdCStar& parent, Rng& rng);
BlockElement random_self_adjoint(const FdCStar& parent, Rng& rng);
// g g* for Gaussian g: positive semidefinite.
BlockElement random_positive(const FdCStar& parent, Rng& rng);
// Full-rank random density normalized to total trace 1.
StateVec random_state(const FdCStar& parent, Rng& rng);

}  // namespace afprop
