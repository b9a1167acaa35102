#pragma once

// Inner-outer (Beurling-Nevanlinna) factorization f = Σᵢ uᵢhᵢ, wandering and
// separating vectors, and the numeric identities behind the Lᵖ theory.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nchardy/beurling.hpp"

namespace nchardy {

enum class FactorizationKind { Unitary, Partial, Sum };

std::string to_string(FactorizationKind kind);

struct InnerOuterPair {
  AlgebraElement inner; ///< partial isometry u with u*u ∈ D
  AlgebraElement outer; ///< h ∈ span(A) with (u*u)h = h
};

struct InnerOuterFactorization {
  AlgebraElement f;
  std::vector<InnerOuterPair> pairs;
  FactorizationKind kind = FactorizationKind::Sum;
};

/// span{f·a : a ∈ A}.
Subspace invariant_hull(const AlgebraElement& f, const TracialSubalgebra& a);

/// f ⊥ span(f·A₀).
bool is_wandering_vector(const AlgebraElement& f, const TracialSubalgebra& a);

/// d ↦ f·d is one-to-one on D.
bool is_separating(const AlgebraElement& f, const TracialSubalgebra& a);

/// h ∈ span(A) and span(hA) = span(A).
bool is_outer(const AlgebraElement& h, const TracialSubalgebra& a);

/// f = uh with u unitary and h outer, or nullopt when the wandering subspace
/// of the hull has no cyclic separating vector. Requires A maximal
/// subdiagonal.
std::optional<InnerOuterFactorization> bn_factorize(const AlgebraElement& f, const TracialSubalgebra& a);

/// f = uh with u*u ∈ D and span(hA) = (u*u)·span(A), for f a wandering
/// vector or positive definite. Kind is Unitary when u*u = 1. Returns
/// nullopt for f = 0.
std::optional<InnerOuterFactorization> partial_bn_factorize(const AlgebraElement& f, const TracialSubalgebra& a);

/// f = Σᵢ uᵢhᵢ with hᵢ = uᵢ*f, when the hull of f is type 1 (nullopt
/// otherwise).
std::optional<InnerOuterFactorization> inner_outer_sum(const AlgebraElement& f, const TracialSubalgebra& a);

struct FactorizationResiduals {
  double reconstruction = 0.0;   ///< ‖f − Σ uᵢhᵢ‖₂
  double partial_isometry = 0.0; ///< uᵢ*uᵢ is a projection
  double initial_in_d = 0.0;     ///< uᵢ*uᵢ ∈ span(D)
  double cross_products = 0.0;   ///< uⱼ*uᵢ = 0
  double outer_in_a = 0.0;       ///< hᵢ ∈ span(A)
  double support = 0.0;          ///< (uᵢ*uᵢ)hᵢ = hᵢ
  double initial_in_hull = 0.0;  ///< uᵢ*uᵢ ∈ span(hᵢA)
  double unitary = 0.0;          ///< u*u = uu* = 1 (Unitary kind only)
  double hull_gap = 0.0;         ///< span(hA) = (u*u)·span(A) (single-pair kinds)

  double max() const;
};

FactorizationResiduals factorization_residuals(const InnerOuterFactorization& fac, const TracialSubalgebra& a);

/// τ(|Σᵢxᵢ|ᵖ) against the external column-sum value τ((Σᵢxᵢ*xᵢ)^{p/2}),
/// the latter from the singular values of the stacked column (xᵢ). For
/// p = ∞ both entries are operator norms.
struct ColumnSumNorms {
  double lhs = 0.0;
  double rhs = 0.0;
  double absolute() const;
  double relative() const;
};

/// Throws PreconditionError naming (i, j) when xᵢ*xⱼ ≠ 0 for some i ≠ j.
ColumnSumNorms column_sum_norms(const FinVNAlgebra& m, const std::vector<AlgebraElement>& xs, LpIndex p);
double column_sum_norm_residual(const FinVNAlgebra& m, const std::vector<AlgebraElement>& xs, LpIndex p);

/// d with τ((d*vd)ᵖ) ≠ τ((d*ed)ᵖ), searching 1, e, 1 − e, the spectral
/// projections of v (per block), then `trials` seeded Gaussian d. nullopt
/// when v = e within tolerance. Requires v ≥ 0, e a projection, 0 < p < ∞.
std::optional<AlgebraElement> istr_witness(const FinVNAlgebra& m, const AlgebraElement& v, const AlgebraElement& e,
                                           double p, int trials, std::uint64_t seed = 0);

} // namespace nchardy
