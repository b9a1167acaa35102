#include "support.hpp"

using namespace nchardy;
using namespace nchardy::testing;

namespace {

TEST(FromGenerators, Examples) {
  const auto m = m2();
  EXPECT_EQ(from_generators(m, {m.identity()}).dim(), 1);
  EXPECT_EQ(from_generators(m, {e(m, 1, 1), 2.0 * e(m, 1, 1)}).dim(), 1);
  EXPECT_EQ(from_generators(m, {e(m, 1, 1), e(m, 1, 2)}).dim(), 2);
  EXPECT_TRUE(from_generators(m, {}).is_zero());
  EXPECT_TRUE(from_generators(m, {m.zero()}).is_zero());
}

TEST(Subspace, BasisIsOrthonormal) {
  Rng rng(31);
  const auto m = FinVNAlgebra({{2, 0.3}, {1, 0.4}});
  const auto s = from_generators(m, {random_gaussian(m, rng), random_gaussian(m, rng), random_gaussian(m, rng)});
  const auto basis = s.basis();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < basis.size(); ++j) {
      EXPECT_NEAR(std::abs(inner(m, basis[i], basis[j]) - Complex(i == j ? 1.0 : 0.0)), 0.0, 1e-12);
    }
  }
}

TEST(RightModuleSpan, Examples) {
  const auto m = m2();
  const auto a = upper(m);
  const auto one = from_generators(m, {m.identity()});
  EXPECT_TRUE(right_module_span(one, a.a_basis()).equals(a.algebra()));
  const auto s = from_generators(m, {e(m, 1, 1), e(m, 1, 2)});
  EXPECT_TRUE(right_module_span(s, a.a0_basis()).equals(from_generators(m, {e(m, 1, 2)})));
  EXPECT_TRUE(right_module_span(Subspace(m), a.a_basis()).is_zero());
}

TEST(IsInvariant, Examples) {
  const auto m = m2();
  const auto a = upper(m);
  EXPECT_TRUE(is_invariant(a.algebra(), a));
  EXPECT_TRUE(is_invariant(from_generators(m, {e(m, 1, 1), e(m, 1, 2)}), a));
  EXPECT_FALSE(is_invariant(from_generators(m, {e(m, 1, 1)}), a));
}

TEST(OrthoComplementWithin, Examples) {
  const auto m = m2();
  const auto k = from_generators(m, {e(m, 1, 1), e(m, 1, 2)});
  EXPECT_TRUE(ortho_complement_within(k, Subspace(m)).equals(k));
  EXPECT_TRUE(ortho_complement_within(k, k).is_zero());
  const auto l = from_generators(m, {e(m, 1, 2)});
  EXPECT_TRUE(ortho_complement_within(k, l).equals(from_generators(m, {e(m, 1, 1)})));
}

TEST(OrthoComplementWithin, RejectsNonSubspace) {
  const auto m = m2();
  const auto k = from_generators(m, {e(m, 1, 1)});
  const auto l = from_generators(m, {e(m, 2, 2)});
  try {
    ortho_complement_within(k, l);
    FAIL() << "expected PreconditionError";
  } catch (const PreconditionError& err) {
    EXPECT_NE(std::string(err.what()).find("basis vector 0"), std::string::npos) << err.what();
    EXPECT_GT(err.residual(), 0.5);
  }
}

TEST(Wandering, Examples) {
  const auto m = m2();
  const auto a = upper(m);
  auto data = wandering_subspace(a.algebra(), a);
  EXPECT_TRUE(data.w.equals(a.diagonal()));
  data = wandering_subspace(from_generators(m, {e(m, 1, 1), e(m, 1, 2)}), a);
  EXPECT_TRUE(data.w.equals(from_generators(m, {e(m, 1, 1)})));
  data = wandering_subspace(Subspace(m), a);
  EXPECT_TRUE(data.w.is_zero());
  EXPECT_THROW(wandering_subspace(from_generators(m, {e(m, 1, 1)}), a), PreconditionError);
}

TEST(SimplyInvariant, Examples) {
  const auto m = m2();
  const auto a = upper(m);
  EXPECT_TRUE(is_simply_invariant(a.algebra(), a));
  EXPECT_FALSE(is_simply_invariant(Subspace(m), a));
  EXPECT_TRUE(is_simply_invariant(from_generators(m, {e(m, 1, 2)}), a));
}

TEST(SubspaceCalculus, JoinIntersectComplement) {
  const auto m = m3();
  const auto x = from_generators(m, {e(m, 1, 1), e(m, 1, 2)});
  const auto y = from_generators(m, {e(m, 1, 2), e(m, 2, 2)});
  EXPECT_EQ(join(x, y).dim(), 3);
  EXPECT_TRUE(intersect(x, y).equals(from_generators(m, {e(m, 1, 2)})));
  EXPECT_EQ(orthogonal_complement(x).dim(), 7);
  EXPECT_TRUE(intersect(x, orthogonal_complement(x)).is_zero());
  EXPECT_TRUE(adjoint_subspace(x).equals(from_generators(m, {e(m, 1, 1), e(m, 2, 1)})));
  EXPECT_NEAR(subspace_distance(x, x), 0.0, 1e-12);
  EXPECT_NEAR(subspace_distance(x, adjoint_subspace(x)), 1.0, 1e-12);
}

// Random invariant subspaces over random nest algebras.

TEST(SubspaceProperties, WanderingSplitting) {
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    Rng rng(1000 + seed);
    const auto m = random_algebra(rng, 3, 4);
    const auto a = build_nest_subalgebra(m, random_nest(m, rng));
    const auto k = random_invariant_subspace(a, seed, {.generators = 1 + static_cast<int>(seed % 3), .low_rank = seed % 2 == 1});
    ASSERT_TRUE(is_invariant(k, a));
    const auto data = wandering_subspace(k, a);
    EXPECT_TRUE(k.contains(data.ka0));
    EXPECT_TRUE(k.equals(join(data.ka0, data.w)));
    EXPECT_EQ(data.ka0.dim() + data.w.dim(), k.dim());
    for (const auto& w : data.w.basis()) {
      EXPECT_LE(data.ka0.project(w).max_abs(), 10 * m.tolerance());
    }
    // The wandering subspace is a right D-module: span(W·D) = W.
    EXPECT_TRUE(right_module_span(data.w, a.d_basis()).equals(data.w));
  }
}

TEST(SubspaceProperties, RandomInvariantSubspaceIsDeterministic) {
  const auto m = FinVNAlgebra::uniform({3, 2});
  const auto a = build_nest_subalgebra(m, NestSpec::upper_triangular(m));
  const auto k1 = random_invariant_subspace(a, 77);
  const auto k2 = random_invariant_subspace(a, 77);
  EXPECT_EQ(k1.coords(), k2.coords());
  EXPECT_TRUE(random_invariant_subspace(a, 77, {.generators = 0}).is_zero());
  EXPECT_TRUE(is_invariant(k1, a));
}

// Oracle for the orthogonality of span(fA) and span(gA): every inner product
// τ((g·b)*(f·a)) over basis elements a, b of A vanishes.
bool hulls_orthogonal_brute_force(const AlgebraElement& f, const AlgebraElement& g, const TracialSubalgebra& a) {
  const auto& m = a.ambient();
  for (const auto& x : a.a_basis()) {
    for (const auto& y : a.a_basis()) {
      const auto fx = f * x;
      const auto gy = g * y;
      if (std::abs(inner(m, fx, gy)) > 1e-9 * std::max(1.0, l2_norm(m, fx) * l2_norm(m, gy))) {
        return false;
      }
    }
  }
  return true;
}

TEST(SubspaceProperties, ZeroProductIffOrthogonalHulls) {
  Rng rng(33);
  int zero_products = 0;
  for (int t = 0; t < 120; ++t) {
    const auto m = random_algebra(rng, 2, 4);
    const auto a = build_nest_subalgebra(m, random_nest(m, rng));
    AlgebraElement f = random_gaussian(m, rng);
    AlgebraElement g = random_low_rank(m, rng, 1);
    if (t % 3 == 0) {
      // f*g = 0 via complementary range projections.
      const auto [p, q] = random_complementary_projections(m, rng);
      f = p * f;
      g = q * g;
      ++zero_products;
    }
    const bool zero = (f.adjoint() * g).max_abs() <= 1e-9 * std::max(1.0, f.max_abs() * g.max_abs());
    const auto fa = invariant_hull(f, a);
    const auto ga = invariant_hull(g, a);
    const bool orthogonal = intersect(fa, orthogonal_complement(ga)).dim() == fa.dim();
    EXPECT_EQ(zero, orthogonal) << "trial " << t;
    EXPECT_EQ(orthogonal, hulls_orthogonal_brute_force(f, g, a)) << "trial " << t;
  }
  EXPECT_GE(zero_products, 40);
}

} // namespace
