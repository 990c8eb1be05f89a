#include "afprop/algebra.hpp"

#include <algorithm>
#include <cmath>

#include "afprop/error.hpp"

namespace afprop {

FdCStar::FdCStar(std::vector<std::size_t> block_dims) : dims_(std::move(block_dims)) {
  if (dims_.empty()) throw ValidationError("an algebra needs at least one block");
  for (auto d : dims_)
    if (d == 0) throw ValidationError("block dimensions must be at least 1");
}

std::size_t FdCStar::complex_dimension() const {
  std::size_t s = 0;
  for (auto d : dims_) s += d * d;
  return s;
}

bool FdCStar::is_abelian() const {
  return std::all_of(dims_.begin(), dims_.end(), [](std::size_t d) { return d == 1; });
}

BlockElement::BlockElement(FdCStar parent, std::vector<ComplexMatrix> blocks)
    : parent_(std::move(parent)), blocks_(std::move(blocks)) {
  if (blocks_.size() != parent_.block_count()) throw ValidationError("block count does not match the algebra");
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    const auto d = parent_.block_dim(i);
    if (blocks_[i].rows() != d || blocks_[i].cols() != d)
      throw ValidationError("block " + std::to_string(i) + " has the wrong size");
  }
}

BlockElement BlockElement::zero(const FdCStar& parent) {
  std::vector<ComplexMatrix> blocks;
  for (auto d : parent.block_dims()) blocks.emplace_back(d, d);
  return BlockElement(parent, std::move(blocks));
}

BlockElement BlockElement::unit(const FdCStar& parent) { return scalar(parent, 1.0); }

BlockElement BlockElement::scalar(const FdCStar& parent, Complex value) {
  std::vector<ComplexMatrix> blocks;
  for (auto d : parent.block_dims()) blocks.push_back(value * ComplexMatrix::identity(d));
  return BlockElement(parent, std::move(blocks));
}

BlockElement BlockElement::diagonal_function(const FdCStar& parent, const std::vector<double>& values) {
  if (!parent.is_abelian()) throw ValidationError("diagonal_function needs an Abelian algebra");
  if (values.size() != parent.block_count()) throw ValidationError("one value per point expected");
  std::vector<ComplexMatrix> blocks;
  for (double v : values) blocks.emplace_back(1, 1, std::vector<Complex>{v});
  return BlockElement(parent, std::move(blocks));
}

namespace {

void require_same(const FdCStar& a, const FdCStar& b) {
  if (!(a == b)) throw ValidationError("operands live in different algebras");
}

}  // namespace

BlockElement mul(const BlockElement& a, const BlockElement& b) {
  require_same(a.parent(), b.parent());
  std::vector<ComplexMatrix> out;
  out.reserve(a.block_count());
  for (std::size_t i = 0; i < a.block_count(); ++i) out.push_back(a.block(i) * b.block(i));
  return BlockElement(a.parent(), std::move(out));
}

BlockElement add(const BlockElement& a, const BlockElement& b) {
  require_same(a.parent(), b.parent());
  std::vector<ComplexMatrix> out;
  out.reserve(a.block_count());
  for (std::size_t i = 0; i < a.block_count(); ++i) out.push_back(a.block(i) + b.block(i));
  return BlockElement(a.parent(), std::move(out));
}

BlockElement sub(const BlockElement& a, const BlockElement& b) {
  require_same(a.parent(), b.parent());
  std::vector<ComplexMatrix> out;
  out.reserve(a.block_count());
  for (std::size_t i = 0; i < a.block_count(); ++i) out.push_back(a.block(i) - b.block(i));
  return BlockElement(a.parent(), std::move(out));
}

BlockElement adjoint(const BlockElement& a) {
  std::vector<ComplexMatrix> out;
  out.reserve(a.block_count());
  for (const auto& m : a.blocks()) out.push_back(m.adjoint());
  return BlockElement(a.parent(), std::move(out));
}

BlockElement scale(Complex s, const BlockElement& a) {
  std::vector<ComplexMatrix> out;
  out.reserve(a.block_count());
  for (const auto& m : a.blocks()) out.push_back(s * m);
  return BlockElement(a.parent(), std::move(out));
}

double cstar_norm(const BlockElement& a) {
  double n = 0.0;
  for (const auto& m : a.blocks()) n = std::max(n, operator_norm(m));
  return n;
}

double self_adjoint_defect(const BlockElement& a) {
  double defect = 0.0, size = 1.0;
  for (const auto& m : a.blocks()) {
    size = std::max(size, m.max_abs());
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = r; c < m.cols(); ++c) defect = std::max(defect, std::abs(m(r, c) - std::conj(m(c, r))));
  }
  return defect / size;
}

bool is_self_adjoint(const BlockElement& a, double tol) { return self_adjoint_defect(a) <= tol; }

BlockElement hermitian_part(const BlockElement& a) {
  std::vector<ComplexMatrix> out;
  for (const auto& m : a.blocks()) {
    ComplexMatrix h(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
      h(r, r) = m(r, r).real();
      for (std::size_t c = r + 1; c < m.cols(); ++c) {
        const Complex v = 0.5 * (m(r, c) + std::conj(m(c, r)));
        h(r, c) = v;
        h(c, r) = std::conj(v);
      }
    }
    out.push_back(std::move(h));
  }
  return BlockElement(a.parent(), std::move(out));
}

BlockElement jordan(const BlockElement& a, const BlockElement& b) {
  return scale(0.5, add(mul(a, b), mul(b, a)));
}

BlockElement lie(const BlockElement& a, const BlockElement& b) {
  return scale(Complex(0.0, -0.5), sub(mul(a, b), mul(b, a)));
}

TraceWeights::TraceWeights(std::vector<double> weights) : w_(std::move(weights)) {
  if (w_.empty()) throw ValidationError("trace weights must be nonempty");
  double s = 0.0;
  for (double t : w_) {
    if (!(t > 0.0) || !std::isfinite(t)) throw ValidationError("trace weights must be positive (faithful trace)");
    s += t;
  }
  if (std::abs(s - 1.0) > 1e-12) throw ValidationError("trace weights must sum to 1");
}

Complex trace_eval(const TraceWeights& mu, const BlockElement& a) {
  if (mu.size() != a.block_count()) throw ValidationError("trace weight count does not match block count");
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.block_count(); ++i)
    s += mu[i] * a.block(i).trace() / static_cast<double>(a.parent().block_dim(i));
  return s;
}

Complex inner_mu(const TraceWeights& mu, const BlockElement& x, const BlockElement& y) {
  require_same(x.parent(), y.parent());
  if (mu.size() != x.block_count()) throw ValidationError("trace weight count does not match block count");
  Complex s = 0.0;
  for (std::size_t i = 0; i < x.block_count(); ++i) {
    // Tr(y* x) = sum conj(y_rc) x_rc
    Complex t = 0.0;
    const auto xe = x.block(i).entries();
    const auto ye = y.block(i).entries();
    for (std::size_t k = 0; k < xe.size(); ++k) t += std::conj(ye[k]) * xe[k];
    s += mu[i] * t / static_cast<double>(x.parent().block_dim(i));
  }
  return s;
}

StateVec::StateVec(FdCStar parent, std::vector<ComplexMatrix> density_blocks)
    : parent_(std::move(parent)), blocks_(std::move(density_blocks)) {
  if (blocks_.size() != parent_.block_count()) throw ValidationError("density block count does not match the algebra");
  double total = 0.0;
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    const auto d = parent_.block_dim(i);
    if (blocks_[i].rows() != d || blocks_[i].cols() != d)
      throw ValidationError("density block " + std::to_string(i) + " has the wrong size");
    if (hermiticity_defect(blocks_[i]) > 1e-10) throw ValidationError("density blocks must be Hermitian");
    if (d == 1) {
      if (blocks_[i](0, 0).real() < -1e-10) throw ValidationError("density block is not positive");
    } else {
      if (herm_eigenvalues(blocks_[i]).front() < -1e-10) throw ValidationError("density block is not positive");
    }
    total += blocks_[i].trace().real();
  }
  if (std::abs(total - 1.0) > 1e-10) throw ValidationError("state densities must have total trace 1");
}

Complex state_eval(const StateVec& phi, const BlockElement& a) {
  require_same(phi.parent(), a.parent());
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.block_count(); ++i) {
    const auto& sg = phi.block(i);
    const auto& m = a.block(i);
    const std::size_t d = m.rows();
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) s += sg(r, c) * m(c, r);
  }
  return s;
}

StateVec trace_state(const TraceWeights& mu, const FdCStar& parent) {
  if (mu.size() != parent.block_count()) throw ValidationError("trace weight count does not match block count");
  std::vector<ComplexMatrix> blocks;
  for (std::size_t i = 0; i < parent.block_count(); ++i) {
    const auto d = parent.block_dim(i);
    blocks.push_back(Complex(mu[i] / static_cast<double>(d)) * ComplexMatrix::identity(d));
  }
  return StateVec(parent, std::move(blocks));
}

StateVec vector_state(const FdCStar& parent, std::size_t block, const std::vector<Complex>& v) {
  if (block >= parent.block_count() || v.size() != parent.block_dim(block))
    throw ValidationError("vector does not fit the chosen block");
  double n2 = 0.0;
  for (const auto& z : v) n2 += std::norm(z);
  if (n2 == 0.0) throw ValidationError("vector state of the zero vector");
  std::vector<ComplexMatrix> blocks;
  for (auto d : parent.block_dims()) blocks.emplace_back(d, d);
  auto& p = blocks[block];
  for (std::size_t r = 0; r < v.size(); ++r)
    for (std::size_t c = 0; c < v.size(); ++c) p(r, c) = v[r] * std::conj(v[c]) / n2;
  return StateVec(parent, std::move(blocks));
}

StateVec point_state(const FdCStar& parent, std::size_t block) {
  if (block >= parent.block_count() || parent.block_dim(block) != 1)
    throw ValidationError("point state needs a one-dimensional block");
  return vector_state(parent, block, {1.0});
}

}  // namespace afprop
