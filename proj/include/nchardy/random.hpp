#pragma once

// Seeded instance generators. Gaussian matrices have independent complex
// entries of unit variance and are then scaled to unit ‖·‖₂.

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "nchardy/tracial.hpp"

namespace nchardy {

using Rng = std::mt19937_64;

AlgebraElement random_gaussian(const FinVNAlgebra& m, Rng& rng);
/// Gaussian element of rank at most r in every block (r ≥ block size gives a
/// full Gaussian).
AlgebraElement random_low_rank(const FinVNAlgebra& m, Rng& rng, int r);
/// Haar-distributed unitary in each block.
AlgebraElement random_unitary(const FinVNAlgebra& m, Rng& rng);
/// g*g + c·1 with g Gaussian and c ∈ [0.1, 1), scaled to unit ‖·‖₂.
AlgebraElement random_positive_definite(const FinVNAlgebra& m, Rng& rng);
/// Projections p and q = 1 − p with Haar-random ranges, built from one
/// unitary so that pq = 0 up to rounding and blocks of rank 0 are exactly
/// zero. Both are nonzero whenever M ≠ ℂ.
std::pair<AlgebraElement, AlgebraElement> random_complementary_projections(const FinVNAlgebra& m, Rng& rng);
/// Random element of the subspace (Gaussian coefficients, unit ‖·‖₂).
AlgebraElement random_in(const Subspace& s, Rng& rng);

/// 1..max_blocks blocks of size 1..max_dim with random positive weights.
FinVNAlgebra random_algebra(Rng& rng, int max_blocks, int max_dim, double tolerance = kDefaultTolerance);
NestSpec random_nest(const FinVNAlgebra& m, Rng& rng);

struct RandomSubspaceOptions {
  /// Number of generators; negative draws it uniformly from 1..dim M.
  int generators = -1;
  /// Draw generators of random rank instead of full Gaussians.
  bool low_rank = false;
};

/// span(g₁..g_k)·A for Gaussian gᵢ; invariant by construction and
/// deterministic per seed.
Subspace random_invariant_subspace(const TracialSubalgebra& a, std::uint64_t seed,
                                   const RandomSubspaceOptions& options = {});

} // namespace nchardy
