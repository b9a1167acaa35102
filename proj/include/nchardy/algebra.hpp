#pragma once

// Finite-dimensional von Neumann algebras M = ⊕ₖ M_{nₖ} with the faithful
// tracial state τ(x) = Σₖ λₖ Tr(xₖ), and the matrix calculus built on them.

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "nchardy/errors.hpp"

namespace nchardy {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kDefaultTolerance = 1e-9;

struct Block {
  int dim = 1;
  double weight = 1.0;

  bool operator==(const Block&) const = default;
};

/// An element of M (equivalently of any Lᵖ(M): the spaces coincide as sets
/// in finite dimensions and only the norm depends on p).
class AlgebraElement {
public:
  AlgebraElement() = default;
  explicit AlgebraElement(std::vector<Matrix> blocks) : blocks_(std::move(blocks)) {}

  std::size_t num_blocks() const { return blocks_.size(); }
  const Matrix& block(std::size_t k) const { return blocks_.at(k); }
  Matrix& block(std::size_t k) { return blocks_.at(k); }
  const std::vector<Matrix>& blocks() const { return blocks_; }

  bool same_shape(const AlgebraElement& other) const;
  AlgebraElement adjoint() const;
  /// Largest entry modulus over all blocks.
  double max_abs() const;

  AlgebraElement& operator+=(const AlgebraElement& rhs);
  AlgebraElement& operator-=(const AlgebraElement& rhs);
  AlgebraElement& operator*=(Complex s);

  friend AlgebraElement operator+(AlgebraElement lhs, const AlgebraElement& rhs) { return lhs += rhs; }
  friend AlgebraElement operator-(AlgebraElement lhs, const AlgebraElement& rhs) { return lhs -= rhs; }
  friend AlgebraElement operator*(AlgebraElement x, Complex s) { return x *= s; }
  friend AlgebraElement operator*(Complex s, AlgebraElement x) { return x *= s; }
  friend AlgebraElement operator-(AlgebraElement x) { return x *= Complex(-1.0); }
  friend AlgebraElement operator*(const AlgebraElement& lhs, const AlgebraElement& rhs);

  /// Exact (bitwise) equality of every entry.
  friend bool operator==(const AlgebraElement& lhs, const AlgebraElement& rhs);

private:
  std::vector<Matrix> blocks_;
};

/// The pair (M, τ). Immutable after construction.
class FinVNAlgebra {
public:
  /// Throws StructuralError on empty/invalid dimensions and DomainError
  /// unless every weight is positive and Σ λₖ nₖ = 1.
  explicit FinVNAlgebra(std::vector<Block> blocks, double tolerance = kDefaultTolerance);

  /// Uniform weights λₖ = 1 / Σⱼ nⱼ.
  static FinVNAlgebra uniform(const std::vector<int>& dims, double tolerance = kDefaultTolerance);

  const std::vector<Block>& blocks() const { return blocks_; }
  std::size_t num_blocks() const { return blocks_.size(); }
  int block_dim(std::size_t k) const { return blocks_.at(k).dim; }
  double weight(std::size_t k) const { return blocks_.at(k).weight; }
  /// Σ nₖ, the size of the representing matrices.
  int total_dim() const { return total_dim_; }
  /// Σ nₖ², the complex dimension of M and of L²(M).
  Eigen::Index dim() const { return dim_; }
  double tolerance() const { return tolerance_; }
  FinVNAlgebra with_tolerance(double tolerance) const { return FinVNAlgebra(blocks_, tolerance); }

  AlgebraElement zero() const;
  AlgebraElement identity() const;
  /// e_{ij} in block k (0-based indices).
  AlgebraElement matrix_unit(std::size_t k, int i, int j) const;
  /// Assembles an element from per-block matrices; checks shapes.
  AlgebraElement element(std::vector<Matrix> blocks) const;

  bool conforms(const AlgebraElement& x) const;
  void check_conforms(const AlgebraElement& x) const;

  /// Isometric coordinates of L²(M): ⟨x, y⟩ = τ(y*x) = coords(y)ᴴ coords(x).
  /// Block k contributes its column-major entries scaled by √λₖ.
  Vector to_coords(const AlgebraElement& x) const;
  AlgebraElement from_coords(const Eigen::Ref<const Vector>& v) const;

  /// Residual test against tolerance·max(1, scale).
  bool negligible(double residual, double scale = 1.0) const;

  bool operator==(const FinVNAlgebra& other) const {
    return blocks_ == other.blocks_ && tolerance_ == other.tolerance_;
  }

private:
  std::vector<Block> blocks_;
  double tolerance_;
  int total_dim_ = 0;
  Eigen::Index dim_ = 0;
};

/// Exponent p ∈ [1, ∞] of Lᵖ(M).
class LpIndex {
public:
  /// Throws DomainError for p < 1 or NaN. Pass +inf for the operator norm.
  explicit LpIndex(double p);
  static LpIndex infinity();

  double value() const { return p_; }
  bool is_infinite() const;
  /// q with 1/p + 1/q = 1.
  LpIndex conjugate() const;

private:
  double p_;
};

Complex trace(const FinVNAlgebra& m, const AlgebraElement& x);
/// ⟨x, y⟩ = τ(y*x).
Complex inner(const FinVNAlgebra& m, const AlgebraElement& x, const AlgebraElement& y);

/// τ(|x|ᵖ)^{1/p}; the operator norm for p = ∞.
double lp_norm(const FinVNAlgebra& m, const AlgebraElement& x, LpIndex p);
double l2_norm(const FinVNAlgebra& m, const AlgebraElement& x);
double operator_norm(const AlgebraElement& x);

struct PolarDecomposition {
  AlgebraElement isometry; ///< partial isometry u with u*u = support(|x|)
  AlgebraElement modulus;  ///< |x| = (x*x)^{1/2}
};

/// x = u|x|. Singular values below tolerance·σ_max are treated as zero.
PolarDecomposition polar_decompose(const FinVNAlgebra& m, const AlgebraElement& x);

/// xˢ for positive semidefinite x; zero eigenvalues map to zero, so s < 0
/// gives the pseudo-inverse power on the support. Throws DomainError if x is
/// not Hermitian or has an eigenvalue below −tolerance.
AlgebraElement positive_power(const FinVNAlgebra& m, const AlgebraElement& x, double s);

/// Orthogonal projection onto the range of positive semidefinite x.
AlgebraElement support_projection(const FinVNAlgebra& m, const AlgebraElement& x);

/// Eigenvalues of a Hermitian element, ascending within each block.
std::vector<Eigen::VectorXd> hermitian_eigenvalues(const FinVNAlgebra& m, const AlgebraElement& x);

/// max(‖x − x*‖∞, ‖x² − x‖∞): zero exactly for orthogonal projections.
double projection_residual(const AlgebraElement& x);

/// Threshold below which a singular value or eigenvalue counts as zero.
double zero_threshold(double sigma_max, double tolerance);

} // namespace nchardy
