#pragma once

// Tracial subalgebras A ⊆ M, the diagonal D = A ∩ A*, the trace-preserving
// expectation Φ onto D, and A₀ = A ∩ ker Φ.

#include <optional>
#include <vector>

#include "nchardy/subspace.hpp"

namespace nchardy {

/// Per block, the sizes of the consecutive intervals (atoms) partitioning
/// {1..nₖ}. Atom sizes {1,1,...,1} give the upper triangular matrices.
struct NestSpec {
  std::vector<std::vector<int>> atoms;

  static NestSpec upper_triangular(const FinVNAlgebra& m);
  static NestSpec trivial(const FinVNAlgebra& m);
  void validate(const FinVNAlgebra& m) const;

  bool operator==(const NestSpec&) const = default;
};

class TracialSubalgebra {
public:
  const FinVNAlgebra& ambient() const { return a_.ambient(); }
  const Subspace& algebra() const { return a_; }
  const Subspace& diagonal() const { return d_; }
  const Subspace& a0() const { return a0_; }
  const std::vector<AlgebraElement>& a_basis() const { return a_basis_; }
  const std::vector<AlgebraElement>& d_basis() const { return d_basis_; }
  const std::vector<AlgebraElement>& a0_basis() const { return a0_basis_; }
  /// Φ as the orthogonal projection onto span(D) in coordinates.
  const Matrix& phi() const { return phi_; }

  AlgebraElement expectation(const AlgebraElement& x) const;
  bool is_maximal_subdiagonal() const { return maximal_subdiagonal_; }

private:
  friend TracialSubalgebra build_nest_subalgebra(const FinVNAlgebra&, const NestSpec&);
  friend TracialSubalgebra build_from_basis(const FinVNAlgebra&, const std::vector<AlgebraElement>&);

  TracialSubalgebra(Subspace a, Subspace d, std::vector<AlgebraElement> a_basis,
                    std::vector<AlgebraElement> d_basis, std::vector<AlgebraElement> a0_basis);

  Subspace a_;
  Subspace d_;
  Subspace a0_;
  std::vector<AlgebraElement> a_basis_;
  std::vector<AlgebraElement> d_basis_;
  std::vector<AlgebraElement> a0_basis_;
  Matrix phi_;
  bool maximal_subdiagonal_ = false;
};

/// Raised when Φ fails to be multiplicative on A; (a, b) is a witness pair
/// with ‖Φ(ab) − Φ(a)Φ(b)‖₂ = residual().
class NotTracialError : public PreconditionError {
public:
  NotTracialError(AlgebraElement a, AlgebraElement b, double residual);
  const AlgebraElement& a() const { return a_; }
  const AlgebraElement& b() const { return b_; }

private:
  AlgebraElement a_;
  AlgebraElement b_;
};

/// Block upper triangular matrices with respect to the nest atoms.
TracialSubalgebra build_nest_subalgebra(const FinVNAlgebra& m, const NestSpec& nest);

/// The unital algebra generated by `generators`. Throws NotTracialError when
/// the expectation onto A ∩ A* is not multiplicative on it.
TracialSubalgebra build_from_basis(const FinVNAlgebra& m, const std::vector<AlgebraElement>& generators);

inline AlgebraElement expectation(const TracialSubalgebra& a, const AlgebraElement& x) { return a.expectation(x); }

/// span(A ∪ A*) = M.
inline bool is_maximal_subdiagonal(const TracialSubalgebra& a) { return a.is_maximal_subdiagonal(); }

/// Residuals of the defining identities, each maximised over basis pairs.
struct TracialResiduals {
  double closure = 0.0;          ///< ab ∈ span(A)
  double multiplicativity = 0.0; ///< Φ(ab) = Φ(a)Φ(b)
  double trace_preservation = 0.0; ///< τ∘Φ = τ on a basis of M
  double bimodule = 0.0;         ///< Φ(d₁ x d₂) = d₁Φ(x)d₂
  double orthogonal_split = 0.0; ///< A = D ⊕ A₀
  double max() const;
};

TracialResiduals tracial_residuals(const TracialSubalgebra& a);

/// Positive g with τ(g·a) = 0 for all a ∈ A₀ and g ∉ span(D), normalised to
/// ‖g‖∞ = 1, or nullopt when no such g exists. Exact: the admissible g
/// are the positive elements of the *-closed subspace (A₀*)^⊥ ∩ ((A₀*)^⊥)*,
/// which contains D; any Hermitian e there orthogonal to D gives the witness
/// e + ‖e‖∞·1.
std::optional<AlgebraElement> unique_extension_witness(const TracialSubalgebra& a);

/// [A]₂ ∩ M; equals span(A) in finite dimensions.
Subspace a_infinity(const TracialSubalgebra& a);

} // namespace nchardy
