#pragma once

// Type 1 / type 2 column-sum decomposition K = Z ⊕ᶜᵒˡ ⊕ᵢ uᵢ·span(A) of right
// invariant subspaces over maximal subdiagonal algebras.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nchardy/tracial.hpp"

namespace nchardy {

enum class TypeLabel { Zero, Type1, Type2, Mixed };

std::string to_string(TypeLabel label);

/// Controls the order in which partial isometries are peeled off the
/// wandering subspace. The resulting Z and span(K₁) do not depend on it.
struct ExtractionOptions {
  /// Seed of the generic candidate drawn at every step.
  std::uint64_t seed = 0;
  /// Replace the wandering basis by a random orthonormal basis first.
  bool rotate_basis = false;
};

struct TypeDecomposition {
  Subspace k;
  Subspace z;  ///< type 2 part
  Subspace k1; ///< span(W·A), the type 1 part
  std::vector<AlgebraElement> isometries;
  WanderingData wandering;
};

/// Largest ‖x − Φ(x)‖₂ over x = wᵢ*wⱼ for basis vectors of W, with the pair.
struct GramResidual {
  double residual = 0.0;
  Eigen::Index i = -1;
  Eigen::Index j = -1;
};

GramResidual wandering_gram_residual(const Subspace& w, const TracialSubalgebra& a);

/// Partial isometries u₁..u_m ∈ W with uᵢ*uᵢ projections in D, uⱼ*uᵢ = 0
/// for i ≠ j and W = ⊕ᵢ uᵢ·D orthogonally.
///
/// Each step takes, among the residual basis vectors followed by one generic
/// combination of them, the candidate w with the largest cyclic submodule
/// w·D (ties: larger rank of w, then earlier candidate), sets u to the polar
/// part of w, and deflates every residual vector v ↦ v − u·Φ(u*v).
///
/// Throws PreconditionError when W*W ⊄ span(D).
std::vector<AlgebraElement> extract_partial_isometries(const Subspace& w, const TracialSubalgebra& a,
                                                       const ExtractionOptions& options = {});

/// Requires A maximal subdiagonal and K invariant (PreconditionError);
/// throws InvariantError if any decomposition identity fails beyond
/// tolerance.
TypeDecomposition type_decomposition(const Subspace& k, const TracialSubalgebra& a,
                                     const ExtractionOptions& options = {});

TypeLabel classify(const TypeDecomposition& dec);
TypeLabel classify_type(const Subspace& k, const TracialSubalgebra& a);

/// A unitary u with K = span(u·A), present iff the wandering subspace has a
/// cyclic separating vector: Z = 0 and the extraction produced a single
/// isometry with u*u = 1.
std::optional<AlgebraElement> standard_generator(const TypeDecomposition& dec, const TracialSubalgebra& a);

/// θ(w) = Σᵢ uᵢ Φ(uᵢ* w): the projection of K onto its wandering subspace
/// along span(K·A₀). Throws PreconditionError when w ∉ K.
AlgebraElement theta_projection(const TypeDecomposition& dec, const TracialSubalgebra& a, const AlgebraElement& w);

/// Residuals of every identity a decomposition must satisfy.
struct DecompositionResiduals {
  double partial_isometry = 0.0;   ///< uᵢ*uᵢ is a projection
  double initial_in_d = 0.0;       ///< uᵢ*uᵢ ∈ span(D)
  double cross_products = 0.0;     ///< uⱼ*uᵢ = 0, i ≠ j
  double isometries_kill_z = 0.0;  ///< uᵢ*z = 0
  double z_type2 = 0.0;            ///< Z = span(Z·A₀)
  double z_invariant = 0.0;        ///< Z·A ⊆ Z
  double column_sum = 0.0;         ///< z*k = 0 for z ∈ Z, k ∈ K₁
  double z_kills_w = 0.0;          ///< z*w = 0 for w ∈ W
  double wandering_gram = 0.0;     ///< W*W ⊆ span(D)
  double k1_wandering = 0.0;       ///< wandering subspace of K₁ equals W
  double k1_from_isometries = 0.0; ///< span(∪ᵢ uᵢA) = K₁
  double reconstruction = 0.0;     ///< K = Z ⊕ K₁
  Eigen::Index dim_k = 0;
  Eigen::Index dim_z = 0;
  Eigen::Index sum_dim_isometry_spans = 0;

  double max() const;
  bool dimensions_add_up() const { return dim_z + sum_dim_isometry_spans == dim_k; }
};

DecompositionResiduals decomposition_residuals(const TypeDecomposition& dec, const TracialSubalgebra& a);

} // namespace nchardy
