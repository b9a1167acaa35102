#include "nchardy/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace nchardy {

namespace {

void require_same_shape(const AlgebraElement& a, const AlgebraElement& b, const char* op) {
  if (!a.same_shape(b)) {
    throw StructuralError(std::string("shape mismatch in ") + op);
  }
}

Matrix hermitian_part(const Matrix& x) { return (x + x.adjoint()) / 2.0; }

// Eigendecomposition of every block of a Hermitian element, after checking
// hermiticity and positivity within tolerance.
struct Spectral {
  std::vector<Eigen::SelfAdjointEigenSolver<Matrix>> solvers;
  double lambda_max = 0.0;
};

Spectral positive_spectrum(const FinVNAlgebra& m, const AlgebraElement& x) {
  m.check_conforms(x);
  const double scale = std::max(1.0, x.max_abs());
  if ((x - x.adjoint()).max_abs() > m.tolerance() * scale) {
    throw DomainError("element is not Hermitian");
  }
  Spectral s;
  for (const auto& b : x.blocks()) {
    s.solvers.emplace_back(hermitian_part(b));
    const auto& ev = s.solvers.back().eigenvalues();
    if (ev.size() > 0) {
      s.lambda_max = std::max(s.lambda_max, ev.maxCoeff());
    }
  }
  for (const auto& solver : s.solvers) {
    const auto& ev = solver.eigenvalues();
    if (ev.size() > 0 && ev.minCoeff() < -m.tolerance() * std::max(1.0, s.lambda_max)) {
      std::ostringstream os;
      os << "element is not positive semidefinite: eigenvalue " << ev.minCoeff();
      throw DomainError(os.str());
    }
  }
  return s;
}

template <typename F>
AlgebraElement spectral_map(const FinVNAlgebra& m, const AlgebraElement& x, F f) {
  const Spectral s = positive_spectrum(m, x);
  const double thr = zero_threshold(s.lambda_max, m.tolerance());
  std::vector<Matrix> out;
  out.reserve(s.solvers.size());
  for (const auto& solver : s.solvers) {
    const auto& ev = solver.eigenvalues();
    Eigen::VectorXd mapped(ev.size());
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
      mapped(i) = ev(i) > thr ? f(ev(i)) : 0.0;
    }
    const Matrix& v = solver.eigenvectors();
    out.emplace_back(v * mapped.cast<Complex>().asDiagonal() * v.adjoint());
  }
  return AlgebraElement(std::move(out));
}

} // namespace

bool AlgebraElement::same_shape(const AlgebraElement& other) const {
  if (blocks_.size() != other.blocks_.size()) {
    return false;
  }
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    if (blocks_[k].rows() != other.blocks_[k].rows() || blocks_[k].cols() != other.blocks_[k].cols()) {
      return false;
    }
  }
  return true;
}

AlgebraElement AlgebraElement::adjoint() const {
  std::vector<Matrix> out;
  out.reserve(blocks_.size());
  for (const auto& b : blocks_) {
    out.emplace_back(b.adjoint());
  }
  return AlgebraElement(std::move(out));
}

double AlgebraElement::max_abs() const {
  double r = 0.0;
  for (const auto& b : blocks_) {
    if (b.size() > 0) {
      r = std::max(r, b.cwiseAbs().maxCoeff());
    }
  }
  return r;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& rhs) {
  require_same_shape(*this, rhs, "addition");
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    blocks_[k] += rhs.blocks_[k];
  }
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& rhs) {
  require_same_shape(*this, rhs, "subtraction");
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    blocks_[k] -= rhs.blocks_[k];
  }
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(Complex s) {
  for (auto& b : blocks_) {
    b *= s;
  }
  return *this;
}

AlgebraElement operator*(const AlgebraElement& lhs, const AlgebraElement& rhs) {
  require_same_shape(lhs, rhs, "multiplication");
  std::vector<Matrix> out;
  out.reserve(lhs.blocks_.size());
  for (std::size_t k = 0; k < lhs.blocks_.size(); ++k) {
    out.emplace_back(lhs.blocks_[k] * rhs.blocks_[k]);
  }
  return AlgebraElement(std::move(out));
}

bool operator==(const AlgebraElement& lhs, const AlgebraElement& rhs) {
  if (!lhs.same_shape(rhs)) {
    return false;
  }
  for (std::size_t k = 0; k < lhs.blocks_.size(); ++k) {
    if (lhs.blocks_[k] != rhs.blocks_[k]) {
      return false;
    }
  }
  return true;
}

FinVNAlgebra::FinVNAlgebra(std::vector<Block> blocks, double tolerance)
    : blocks_(std::move(blocks)), tolerance_(tolerance) {
  if (blocks_.empty()) {
    throw StructuralError("algebra needs at least one block");
  }
  if (!(tolerance_ > 0.0)) {
    throw DomainError("tolerance must be positive");
  }
  double state = 0.0;
  for (const auto& b : blocks_) {
    if (b.dim < 1) {
      throw StructuralError("block dimensions must be positive");
    }
    if (!(b.weight > 0.0) || !std::isfinite(b.weight)) {
      throw DomainError("trace weights must be positive (faithful trace)");
    }
    total_dim_ += b.dim;
    dim_ += static_cast<Eigen::Index>(b.dim) * b.dim;
    state += b.weight * b.dim;
  }
  if (std::abs(state - 1.0) > 1e-12 * static_cast<double>(total_dim_)) {
    std::ostringstream os;
    os << "trace weights give tau(1) = " << state << ", expected 1";
    throw DomainError(os.str());
  }
}

FinVNAlgebra FinVNAlgebra::uniform(const std::vector<int>& dims, double tolerance) {
  int total = 0;
  for (int n : dims) {
    if (n < 1) {
      throw StructuralError("block dimensions must be positive");
    }
    total += n;
  }
  std::vector<Block> blocks;
  for (int n : dims) {
    blocks.push_back({n, 1.0 / total});
  }
  return FinVNAlgebra(std::move(blocks), tolerance);
}

AlgebraElement FinVNAlgebra::zero() const {
  std::vector<Matrix> out;
  for (const auto& b : blocks_) {
    out.emplace_back(Matrix::Zero(b.dim, b.dim));
  }
  return AlgebraElement(std::move(out));
}

AlgebraElement FinVNAlgebra::identity() const {
  std::vector<Matrix> out;
  for (const auto& b : blocks_) {
    out.emplace_back(Matrix::Identity(b.dim, b.dim));
  }
  return AlgebraElement(std::move(out));
}

AlgebraElement FinVNAlgebra::matrix_unit(std::size_t k, int i, int j) const {
  if (k >= blocks_.size() || i < 0 || j < 0 || i >= blocks_[k].dim || j >= blocks_[k].dim) {
    throw StructuralError("matrix unit index out of range");
  }
  AlgebraElement x = zero();
  x.block(k)(i, j) = 1.0;
  return x;
}

AlgebraElement FinVNAlgebra::element(std::vector<Matrix> blocks) const {
  AlgebraElement x(std::move(blocks));
  check_conforms(x);
  return x;
}

bool FinVNAlgebra::conforms(const AlgebraElement& x) const {
  if (x.num_blocks() != blocks_.size()) {
    return false;
  }
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    if (x.block(k).rows() != blocks_[k].dim || x.block(k).cols() != blocks_[k].dim) {
      return false;
    }
  }
  return true;
}

void FinVNAlgebra::check_conforms(const AlgebraElement& x) const {
  if (!conforms(x)) {
    throw StructuralError("element does not conform to the algebra's block structure");
  }
}

Vector FinVNAlgebra::to_coords(const AlgebraElement& x) const {
  check_conforms(x);
  Vector v(dim_);
  Eigen::Index offset = 0;
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    const Eigen::Index len = x.block(k).size();
    v.segment(offset, len) = Eigen::Map<const Vector>(x.block(k).data(), len) * std::sqrt(blocks_[k].weight);
    offset += len;
  }
  return v;
}

AlgebraElement FinVNAlgebra::from_coords(const Eigen::Ref<const Vector>& v) const {
  if (v.size() != dim_) {
    throw StructuralError("coordinate vector has the wrong length");
  }
  std::vector<Matrix> out;
  out.reserve(blocks_.size());
  Eigen::Index offset = 0;
  for (const auto& b : blocks_) {
    const Eigen::Index len = static_cast<Eigen::Index>(b.dim) * b.dim;
    Matrix blk(b.dim, b.dim);
    Eigen::Map<Vector>(blk.data(), len) = v.segment(offset, len) / std::sqrt(b.weight);
    out.push_back(std::move(blk));
    offset += len;
  }
  return AlgebraElement(std::move(out));
}

bool FinVNAlgebra::negligible(double residual, double scale) const {
  return residual <= tolerance_ * std::max(1.0, scale);
}

LpIndex::LpIndex(double p) : p_(p) {
  if (std::isnan(p) || p < 1.0) {
    throw DomainError("Lp exponent must satisfy p >= 1, got " + std::to_string(p));
  }
}

LpIndex LpIndex::infinity() { return LpIndex(std::numeric_limits<double>::infinity()); }

bool LpIndex::is_infinite() const { return std::isinf(p_); }

LpIndex LpIndex::conjugate() const {
  if (is_infinite()) {
    return LpIndex(1.0);
  }
  if (p_ == 1.0) {
    return infinity();
  }
  return LpIndex(p_ / (p_ - 1.0));
}

Complex trace(const FinVNAlgebra& m, const AlgebraElement& x) {
  m.check_conforms(x);
  Complex t = 0.0;
  for (std::size_t k = 0; k < m.num_blocks(); ++k) {
    t += m.weight(k) * x.block(k).trace();
  }
  return t;
}

Complex inner(const FinVNAlgebra& m, const AlgebraElement& x, const AlgebraElement& y) {
  m.check_conforms(x);
  m.check_conforms(y);
  Complex t = 0.0;
  for (std::size_t k = 0; k < m.num_blocks(); ++k) {
    // Tr(y*x) = Σ conj(y_ij) x_ij
    t += m.weight(k) * (y.block(k).conjugate().cwiseProduct(x.block(k))).sum();
  }
  return t;
}

double operator_norm(const AlgebraElement& x) {
  double r = 0.0;
  for (const auto& b : x.blocks()) {
    if (b.size() > 0) {
      Eigen::JacobiSVD<Matrix> svd(b);
      r = std::max(r, svd.singularValues()(0));
    }
  }
  return r;
}

double lp_norm(const FinVNAlgebra& m, const AlgebraElement& x, LpIndex p) {
  m.check_conforms(x);
  if (p.is_infinite()) {
    return operator_norm(x);
  }
  const double pv = p.value();
  double sum = 0.0;
  for (std::size_t k = 0; k < m.num_blocks(); ++k) {
    Eigen::JacobiSVD<Matrix> svd(x.block(k));
    sum += m.weight(k) * svd.singularValues().array().pow(pv).sum();
  }
  return std::pow(sum, 1.0 / pv);
}

double l2_norm(const FinVNAlgebra& m, const AlgebraElement& x) {
  return std::sqrt(std::max(0.0, inner(m, x, x).real()));
}

PolarDecomposition polar_decompose(const FinVNAlgebra& m, const AlgebraElement& x) {
  m.check_conforms(x);
  std::vector<Eigen::JacobiSVD<Matrix>> svds;
  double sigma_max = 0.0;
  for (const auto& b : x.blocks()) {
    svds.emplace_back(b, Eigen::ComputeFullU | Eigen::ComputeFullV);
    sigma_max = std::max(sigma_max, svds.back().singularValues()(0));
  }
  const double thr = zero_threshold(sigma_max, m.tolerance());
  std::vector<Matrix> u;
  std::vector<Matrix> pos;
  for (const auto& svd : svds) {
    const auto& s = svd.singularValues();
    Eigen::Index r = 0;
    while (r < s.size() && s(r) > thr) {
      ++r;
    }
    const Matrix ur = svd.matrixU().leftCols(r);
    const Matrix vr = svd.matrixV().leftCols(r);
    u.emplace_back(ur * vr.adjoint());
    pos.emplace_back(vr * s.head(r).cast<Complex>().asDiagonal() * vr.adjoint());
  }
  return {AlgebraElement(std::move(u)), AlgebraElement(std::move(pos))};
}

AlgebraElement positive_power(const FinVNAlgebra& m, const AlgebraElement& x, double s) {
  return spectral_map(m, x, [s](double lambda) { return std::pow(lambda, s); });
}

AlgebraElement support_projection(const FinVNAlgebra& m, const AlgebraElement& x) {
  return spectral_map(m, x, [](double) { return 1.0; });
}

std::vector<Eigen::VectorXd> hermitian_eigenvalues(const FinVNAlgebra& m, const AlgebraElement& x) {
  m.check_conforms(x);
  std::vector<Eigen::VectorXd> out;
  for (const auto& b : x.blocks()) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(b), Eigen::EigenvaluesOnly);
    out.push_back(solver.eigenvalues());
  }
  return out;
}

double projection_residual(const AlgebraElement& x) {
  return std::max((x - x.adjoint()).max_abs(), (x * x - x).max_abs());
}

double zero_threshold(double sigma_max, double tolerance) {
  return sigma_max > 0.0 ? tolerance * sigma_max : tolerance;
}

} // namespace nchardy
