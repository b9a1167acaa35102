#pragma once

// Subspaces of the Hilbert space L²(M) with ⟨x, y⟩ = τ(y*x), held as
// orthonormal coordinate bases (see FinVNAlgebra::to_coords).

#include <vector>

#include "nchardy/algebra.hpp"

namespace nchardy {

class TracialSubalgebra;

/// Orthonormal basis of the column span of g. A singular value σ counts as
/// zero iff σ ≤ tolerance·max(σ_max, scale_floor); pass the natural size of
/// the columns as scale_floor when cancellation down to roundoff is expected.
Matrix orthonormal_columns(const Matrix& g, double tolerance, double scale_floor = 0.0);

class Subspace {
public:
  /// The zero subspace.
  explicit Subspace(FinVNAlgebra ambient);
  /// Wraps coordinates that are already orthonormal (checked).
  Subspace(FinVNAlgebra ambient, Matrix orthonormal_coords);

  const FinVNAlgebra& ambient() const { return ambient_; }
  Eigen::Index dim() const { return basis_.cols(); }
  bool is_zero() const { return basis_.cols() == 0; }
  const Matrix& coords() const { return basis_; }

  AlgebraElement element(Eigen::Index i) const;
  std::vector<AlgebraElement> basis() const;

  Vector project_coords(const Vector& v) const;
  AlgebraElement project(const AlgebraElement& x) const;
  /// ‖x − P x‖₂.
  double residual(const AlgebraElement& x) const;

  /// Membership with residual ≤ tolerance·max(1, ‖x‖₂).
  bool contains(const AlgebraElement& x) const;
  bool contains(const Subspace& other) const;
  /// Same dimension and mutual containment.
  bool equals(const Subspace& other) const;

private:
  FinVNAlgebra ambient_;
  Matrix basis_;
};

/// Spectral norm of the difference of the orthogonal projections (the sine
/// of the largest principal angle; 1 when the dimensions differ).
double subspace_distance(const Subspace& a, const Subspace& b);

/// Orthonormal basis of span(gens) under the global rank threshold.
Subspace from_generators(const FinVNAlgebra& m, const std::vector<AlgebraElement>& gens);

/// span{s·t : s ∈ basis(S), t ∈ T}. Single pass: when T spans an algebra
/// the result is already a right T-module.
Subspace right_module_span(const Subspace& s, const std::vector<AlgebraElement>& t);
Subspace right_module_span(const Subspace& s, const Subspace& t);
/// span{x·s : s ∈ basis(S)}.
Subspace left_multiply(const AlgebraElement& x, const Subspace& s);

Subspace join(const Subspace& a, const Subspace& b);
Subspace intersect(const Subspace& a, const Subspace& b);
/// S* = {s* : s ∈ S}.
Subspace adjoint_subspace(const Subspace& s);
/// M ⊖ S.
Subspace orthogonal_complement(const Subspace& s);
/// K ⊖ L. Throws PreconditionError naming the offending basis vector of L
/// when L ⊄ K.
Subspace ortho_complement_within(const Subspace& k, const Subspace& l);

/// Right A-invariance: span(K·A) ⊆ K.
bool is_invariant(const Subspace& k, const TracialSubalgebra& a);

struct WanderingData {
  Subspace k;
  Subspace ka0; ///< span(K·A₀)
  Subspace w;   ///< K ⊖ span(K·A₀)
};

/// Throws PreconditionError when K is not invariant.
WanderingData wandering_subspace(const Subspace& k, const TracialSubalgebra& a);

/// dim span(K·A₀) < dim K.
bool is_simply_invariant(const Subspace& k, const TracialSubalgebra& a);

} // namespace nchardy
