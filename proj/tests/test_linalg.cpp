#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "afprop/error.hpp"
#include "afprop/linalg.hpp"
#include "afprop/random.hpp"

using namespace afprop;

namespace {

// Characteristic polynomial coefficients (monic, highest first) by Faddeev-LeVerrier.
std::vector<Complex> char_poly(const ComplexMatrix& a) {
  const std::size_t n = a.rows();
  std::vector<Complex> c(n + 1);
  c[0] = 1.0;
  ComplexMatrix m(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    ComplexMatrix mk = a * m;
    for (std::size_t i = 0; i < n; ++i) mk(i, i) += c[k - 1];
    const ComplexMatrix am = a * mk;
    c[k] = -am.trace() / double(k);
    m = mk;
  }
  return c;
}

// Durand-Kerner simultaneous root iteration.
std::vector<Complex> poly_roots(const std::vector<Complex>& c) {
  const std::size_t n = c.size() - 1;
  std::vector<Complex> z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = std::pow(Complex(0.4, 0.9), double(i)) * 3.0;
  auto eval = [&](Complex x) {
    Complex s = 0.0;
    for (const auto& ci : c) s = s * x + ci;
    return s;
  };
  for (int it = 0; it < 5000; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      Complex den = 1.0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) den *= (z[i] - z[j]);
      z[i] -= eval(z[i]) / den;
    }
  }
  return z;
}

double power_iteration_norm(const ComplexMatrix& a) {
  const ComplexMatrix g = a.adjoint() * a;
  std::vector<Complex> v(g.cols(), 1.0);
  double lambda = 0.0;
  for (int it = 0; it < 20000; ++it) {
    std::vector<Complex> w(v.size(), 0.0);
    for (std::size_t r = 0; r < g.rows(); ++r)
      for (std::size_t c = 0; c < g.cols(); ++c) w[r] += g(r, c) * v[c];
    double n = 0.0;
    for (auto& x : w) n += std::norm(x);
    n = std::sqrt(n);
    for (auto& x : w) x /= n;
    lambda = n;
    v = w;
  }
  return std::sqrt(lambda);
}

}  // namespace

TEST(HermEigen, IdentityHasUnitSpectrum) {
  const auto e = herm_eigen(ComplexMatrix::identity(3));
  for (double l : e.eigenvalues) EXPECT_DOUBLE_EQ(l, 1.0);
}

TEST(HermEigen, PauliX) {
  const ComplexMatrix x(2, 2, {0.0, 1.0, 1.0, 0.0});
  const auto e = herm_eigen(x);
  EXPECT_NEAR(e.eigenvalues[0], -1.0, 1e-15);
  EXPECT_NEAR(e.eigenvalues[1], 1.0, 1e-15);
}

TEST(HermEigen, MatchesCharacteristicPolynomialRoots) {
  Rng rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix a = random_hermitian(4, rng);
    const auto e = herm_eigen(a);
    auto roots = poly_roots(char_poly(a));
    std::vector<double> re;
    for (auto z : roots) {
      EXPECT_NEAR(z.imag(), 0.0, 1e-9);
      re.push_back(z.real());
    }
    std::sort(re.begin(), re.end());
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(e.eigenvalues[i], re[i], 1e-9);
  }
}

TEST(HermEigen, ReconstructionAndUnitarity) {
  Rng rng(12);
  for (std::size_t n : {1, 2, 3, 5, 8, 13, 32}) {
    const ComplexMatrix a = random_hermitian(n, rng);
    const auto e = herm_eigen(a);
    ASSERT_TRUE(std::is_sorted(e.eigenvalues.begin(), e.eigenvalues.end()));
    const ComplexMatrix lam = ComplexMatrix::diagonal(e.eigenvalues);
    const ComplexMatrix& v = e.eigenvectors;
    EXPECT_LE((a - v * lam * v.adjoint()).frobenius_norm(), 1e-10 * (1.0 + a.frobenius_norm()));
    EXPECT_LE((v.adjoint() * v - ComplexMatrix::identity(n)).frobenius_norm(), 1e-10);
  }
}

TEST(HermEigen, RejectsBadInput) {
  EXPECT_THROW(herm_eigen(ComplexMatrix(2, 3)), ValidationError);
  EXPECT_THROW(herm_eigen(ComplexMatrix(2, 2, {0.0, 1.0, 0.0, 0.0})), ValidationError);
}

TEST(ComplexMatrix, RejectsNonFiniteEntries) {
  EXPECT_THROW(ComplexMatrix(1, 1, {Complex(NAN, 0.0)}), ValidationError);
  EXPECT_THROW(ComplexMatrix(2, 2, {1.0}), ValidationError);
}

TEST(OperatorNorm, Examples) {
  EXPECT_DOUBLE_EQ(operator_norm(ComplexMatrix(2, 2, {0.0, 1.0, 0.0, 0.0})), 1.0);
  EXPECT_DOUBLE_EQ(operator_norm(2.0 * ComplexMatrix::identity(3)), 2.0);
}

TEST(OperatorNorm, AgreesWithPowerIteration) {
  Rng rng(13);
  for (int trial = 0; trial < 5; ++trial) {
    const ComplexMatrix a = random_matrix(3, 3, rng);
    EXPECT_NEAR(operator_norm(a), power_iteration_norm(a), 1e-9);
  }
  const ComplexMatrix r = random_matrix(2, 4, rng);
  EXPECT_NEAR(operator_norm(r), power_iteration_norm(r), 1e-9);
}

TEST(OperatorNorm, CStarIdentitySubmultiplicativityTriangle) {
  Rng rng(14);
  for (int trial = 0; trial < 50; ++trial) {
    const ComplexMatrix a = random_matrix(4, 4, rng);
    const ComplexMatrix b = random_matrix(4, 4, rng);
    const double na = operator_norm(a), nb = operator_norm(b);
    EXPECT_NEAR(operator_norm(a.adjoint() * a), na * na, 1e-9 * na * na);
    EXPECT_LE(operator_norm(a * b), na * nb + 1e-9);
    EXPECT_LE(operator_norm(a + b), na + nb + 1e-9);
  }
}
