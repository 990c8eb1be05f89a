#include "afprop/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "afprop/error.hpp"

namespace afprop {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    throw ValidationError("matrix entry count does not match its shape");
  }
  for (const auto& z : data_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw ValidationError("matrix has a non-finite entry");
    }
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex s = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
  return s;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw ValidationError("matrix shape mismatch in +");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw ValidationError("matrix shape mismatch in -");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  for (auto& z : data_) z *= s;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw ValidationError("matrix shape mismatch in *");
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex(0.0)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

double hermiticity_defect(const ComplexMatrix& a) {
  if (!a.is_square()) throw ValidationError("hermiticity of a non-square matrix");
  double s = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) s += std::norm(a(r, c) - std::conj(a(c, r)));
  return std::sqrt(s);
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
  return a.is_square() && hermiticity_defect(a) <= tol * (1.0 + a.frobenius_norm());
}

namespace {

ComplexMatrix checked_symmetrized(const ComplexMatrix& a) {
  if (!a.is_square()) throw ValidationError("eigendecomposition needs a square matrix");
  if (!is_hermitian(a, 1e-12)) throw ValidationError("eigendecomposition needs a Hermitian matrix");
  const std::size_t n = a.rows();
  ComplexMatrix b(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    b(r, r) = a(r, r).real();
    for (std::size_t c = r + 1; c < n; ++c) {
      const Complex v = 0.5 * (a(r, c) + std::conj(a(c, r)));
      b(r, c) = v;
      b(c, r) = std::conj(v);
    }
  }
  return b;
}

double off_diagonal_norm(const ComplexMatrix& b) {
  double s = 0.0;
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = r + 1; c < b.cols(); ++c) s += 2.0 * std::norm(b(r, c));
  return std::sqrt(s);
}

// Diagonalizes b in place; accumulates rotations into v when given.
void jacobi(ComplexMatrix& b, ComplexMatrix* v, double tol) {
  const std::size_t n = b.rows();
  const double scale = b.frobenius_norm();
  if (n < 2 || scale == 0.0) return;
  for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
    if (off_diagonal_norm(b) <= tol * scale) return;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex bpq = b(p, q);
        const double mag = std::abs(bpq);
        if (mag <= 1e-300) continue;
        const double app = b(p, p).real();
        const double aqq = b(q, q).real();
        const double tau = (aqq - app) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex ph = std::conj(bpq / mag);
        const Complex u00 = c, u01 = s, u10 = -s * ph, u11 = c * ph;
        for (std::size_t k = 0; k < n; ++k) {
          const Complex x = b(k, p), y = b(k, q);
          b(k, p) = x * u00 + y * u10;
          b(k, q) = x * u01 + y * u11;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex x = b(p, k), y = b(q, k);
          b(p, k) = std::conj(u00) * x + std::conj(u10) * y;
          b(q, k) = std::conj(u01) * x + std::conj(u11) * y;
        }
        b(p, q) = 0.0;
        b(q, p) = 0.0;
        b(p, p) = b(p, p).real();
        b(q, q) = b(q, q).real();
        if (v) {
          for (std::size_t k = 0; k < n; ++k) {
            const Complex x = (*v)(k, p), y = (*v)(k, q);
            (*v)(k, p) = x * u00 + y * u10;
            (*v)(k, q) = x * u01 + y * u11;
          }
        }
      }
    }
  }
  if (off_diagonal_norm(b) > 1e-10 * scale) throw NumericalError("Jacobi sweeps did not converge");
}

}  // namespace

HermitianEigen herm_eigen(const ComplexMatrix& a, double tol) {
  ComplexMatrix b = checked_symmetrized(a);
  const std::size_t n = b.rows();
  ComplexMatrix v = ComplexMatrix::identity(n);
  jacobi(b, &v, tol);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return b(i, i).real() < b(j, j).real(); });
  HermitianEigen out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = b(order[k], order[k]).real();
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, k) = v(r, order[k]);
  }
  return out;
}

std::vector<double> herm_eigenvalues(const ComplexMatrix& a, double tol) {
  ComplexMatrix b = checked_symmetrized(a);
  const std::size_t n = b.rows();
  std::vector<double> ev(n);
  if (n == 2) {
    const double x = b(0, 0).real(), y = b(1, 1).real();
    const double h = std::hypot(0.5 * (x - y), std::abs(b(0, 1)));
    ev[0] = 0.5 * (x + y) - h;
    ev[1] = 0.5 * (x + y) + h;
    return ev;
  }
  jacobi(b, nullptr, tol);
  for (std::size_t k = 0; k < n; ++k) ev[k] = b(k, k).real();
  std::sort(ev.begin(), ev.end());
  return ev;
}

double operator_norm(const ComplexMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  if (a.rows() == 1 && a.cols() == 1) return std::abs(a(0, 0));
  if (a.is_square() && hermiticity_defect(a) <= 1e-14 * (1.0 + a.frobenius_norm())) {
    const auto ev = herm_eigenvalues(a);
    return std::max(std::abs(ev.front()), std::abs(ev.back()));
  }
  const ComplexMatrix g = a.rows() >= a.cols() ? a.adjoint() * a : a * a.adjoint();
  const auto ev = herm_eigenvalues(g);
  return std::sqrt(std::max(ev.back(), 0.0));
}

}  // namespace afprop
