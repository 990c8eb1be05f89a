#pragma once

#include <string>

#include "afprop/lipnorm.hpp"

namespace afprop {

enum class MkMethod { lp_exact, cutting_plane, closed_form };
std::string to_string(MkMethod m);

struct MkResult {
  double lower = 0.0;
  double upper = 0.0;
  std::size_t iterations = 0;
  MkMethod method = MkMethod::lp_exact;
  bool converged = true;
  double value() const { return 0.5 * (lower + upper); }
};

// Exact LP over functions on the top-level points. With reduce_symmetry the LP
// is posed on orbits of the tree automorphisms that fix the objective and the
// trace, which leaves the optimum unchanged.
MkResult mk_abelian(const LipData& L, const StateVec& phi, const StateVec& psi, bool reduce_symmetry = true);

inline constexpr std::size_t kCuttingPlaneMaxIterations = 10000;

// Kelley cutting planes on {a = a*, mu(a) = 0, ||a - E_n a|| <= beta(n)}.
MkResult mk_general(const LipData& L, const StateVec& phi, const StateVec& psi, double tol,
                    std::size_t max_iterations = kCuttingPlaneMaxIterations);

// beta0 * ||sigma_phi - sigma_psi||_1 on a one-block algebra.
double mk_depth1_closed_form(double beta0, const StateVec& phi, const StateVec& psi);

// The state a -> phi(E(a)).
StateVec pushforward_under_expectation(const StateVec& phi, const ExpectationOperator& op);

// Real coordinates of self-adjoint elements: per block the diagonal, then for
// each r < c the real and imaginary parts of entry (r, c).
std::size_t hermitian_coordinate_count(const FdCStar& alg);
BlockElement hermitian_basis_element(const FdCStar& alg, std::size_t k);
BlockElement from_hermitian_coordinates(const FdCStar& alg, const std::vector<double>& x);
std::vector<double> to_hermitian_coordinates(const BlockElement& a);

}  // namespace afprop
