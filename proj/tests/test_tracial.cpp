#include <limits>

#include "support.hpp"

using namespace nchardy;
using namespace nchardy::testing;

namespace {

TEST(Nest, Validation) {
  const auto m = m3();
  EXPECT_THROW(build_nest_subalgebra(m, NestSpec{{{1, 1}}}), StructuralError);
  EXPECT_THROW(build_nest_subalgebra(m, NestSpec{{{2, 0, 1}}}), StructuralError);
  EXPECT_THROW(build_nest_subalgebra(m, NestSpec{{{3}, {1}}}), StructuralError);
  EXPECT_NO_THROW(build_nest_subalgebra(m, NestSpec{{{2, 1}}}));
}

TEST(Nest, UpperTriangularM2) {
  const auto m = m2();
  const auto a = upper(m);
  EXPECT_EQ(a.algebra().dim(), 3);
  EXPECT_TRUE(a.diagonal().equals(from_generators(m, {e(m, 1, 1), e(m, 2, 2)})));
  EXPECT_TRUE(a.a0().equals(from_generators(m, {e(m, 1, 2)})));
  EXPECT_TRUE(a.is_maximal_subdiagonal());
}

TEST(Nest, TrivialNestIsWholeAlgebra) {
  const auto m = m2();
  const auto a = build_nest_subalgebra(m, NestSpec::trivial(m));
  EXPECT_EQ(a.algebra().dim(), 4);
  EXPECT_EQ(a.diagonal().dim(), 4);
  EXPECT_TRUE(a.a0().is_zero());
}

TEST(Nest, BlockUpperTriangularM3) {
  const auto m = m3();
  const auto a = build_nest_subalgebra(m, NestSpec{{{2, 1}}});
  EXPECT_EQ(a.algebra().dim(), 7);
  EXPECT_EQ(a.diagonal().dim(), 5);
  EXPECT_EQ(a.a0().dim(), 2);
}

TEST(FromBasis, Examples) {
  const auto m = m2();
  auto a = build_from_basis(m, {});
  EXPECT_TRUE(a.algebra().equals(from_generators(m, {m.identity()})));
  EXPECT_TRUE(a.diagonal().equals(a.algebra()));
  EXPECT_TRUE(a.a0().is_zero());

  a = build_from_basis(m, {e(m, 1, 2)});
  EXPECT_TRUE(a.algebra().equals(from_generators(m, {m.identity(), e(m, 1, 2)})));
  EXPECT_TRUE(a.diagonal().equals(from_generators(m, {m.identity()})));
  EXPECT_TRUE(a.a0().equals(from_generators(m, {e(m, 1, 2)})));
  EXPECT_TRUE(elements_near(a.expectation(e(m, 1, 2)), m.zero()));

  a = build_from_basis(m, {e(m, 1, 1)});
  EXPECT_TRUE(a.algebra().equals(from_generators(m, {m.identity(), e(m, 1, 1)})));
  EXPECT_TRUE(a.diagonal().equals(a.algebra()));
}

TEST(FromBasis, ClosesUnderProducts) {
  const auto m = m3();
  const auto a = build_from_basis(m, {e(m, 1, 2), e(m, 2, 3)});
  EXPECT_TRUE(a.algebra().contains(e(m, 1, 3)));
  EXPECT_EQ(a.algebra().dim(), 4);
}

TEST(FromBasis, RejectsNonTracial) {
  // x = e11 + e12 is idempotent and D = ℂ1, so Φ(x²) = 1/2 but Φ(x)² = 1/4.
  const auto m = m2();
  try {
    build_from_basis(m, {e(m, 1, 1) + e(m, 1, 2)});
    FAIL() << "expected NotTracialError";
  } catch (const NotTracialError& err) {
    EXPECT_GT(err.residual(), m.tolerance());
    EXPECT_TRUE(m.conforms(err.a()));
    EXPECT_TRUE(m.conforms(err.b()));
  }
}

TEST(Expectation, Examples) {
  const auto m = m2();
  const auto a = upper(m);
  EXPECT_TRUE(elements_near(expectation(a, m.identity()), m.identity()));
  EXPECT_TRUE(elements_near(expectation(a, e(m, 1, 2)), m.zero()));
  EXPECT_TRUE(elements_near(expectation(a, e(m, 1, 1) + e(m, 1, 2) + e(m, 2, 2)), e(m, 1, 1) + e(m, 2, 2)));
}

TEST(MaximalSubdiagonal, Examples) {
  const auto m = m2();
  EXPECT_TRUE(is_maximal_subdiagonal(upper(m)));
  EXPECT_FALSE(is_maximal_subdiagonal(build_from_basis(m, {e(m, 1, 2)})));
  EXPECT_TRUE(is_maximal_subdiagonal(build_nest_subalgebra(m, NestSpec::trivial(m))));
}

TEST(UniqueExtension, Examples) {
  const auto m = m2();
  EXPECT_FALSE(unique_extension_witness(upper(m)).has_value());
  EXPECT_FALSE(unique_extension_witness(build_nest_subalgebra(m, NestSpec::trivial(m))).has_value());

  const auto a = build_from_basis(m, {e(m, 1, 2)});
  const auto g = unique_extension_witness(a);
  ASSERT_TRUE(g.has_value());
  EXPECT_NO_THROW(positive_power(m, *g, 1.0));
  for (const auto& x : a.a0_basis()) {
    EXPECT_LT(std::abs(trace(m, *g * x)), 1e-12);
  }
  EXPECT_GT(a.diagonal().residual(*g), 1e-3);
}

TEST(AInfinity, EqualsSpanOfA) {
  const auto m = m2();
  for (const auto& a : {upper(m), build_from_basis(m, {}), build_nest_subalgebra(m, NestSpec::trivial(m))}) {
    EXPECT_TRUE(a_infinity(a).equals(a.algebra()));
  }
}

TEST(TracialProperties, RandomNestAlgebras) {
  Rng rng(21);
  for (int t = 0; t < 60; ++t) {
    const auto m = random_algebra(rng, 3, 5);
    const auto a = build_nest_subalgebra(m, random_nest(m, rng));
    EXPECT_LE(tracial_residuals(a).max(), m.tolerance());
    EXPECT_TRUE(a.is_maximal_subdiagonal());
    EXPECT_FALSE(unique_extension_witness(a).has_value());
    EXPECT_TRUE(a.algebra().contains(m.identity()));
  }
}

TEST(TracialProperties, ExpectationContractions) {
  Rng rng(22);
  const std::vector<double> ps{1.0, 2.0, 4.0, std::numeric_limits<double>::infinity()};
  for (int t = 0; t < 60; ++t) {
    const auto m = random_algebra(rng, 3, 5);
    const auto a = build_nest_subalgebra(m, random_nest(m, rng));
    const auto x = random_gaussian(m, rng);
    const auto px = a.expectation(x);
    EXPECT_TRUE(elements_near(a.expectation(px), px, 1e-12));
    EXPECT_LE(std::abs(trace(m, px) - trace(m, x)), m.tolerance());
    for (double p : ps) {
      EXPECT_LE(lp_norm(m, px, LpIndex(p)), lp_norm(m, x, LpIndex(p)) + m.tolerance()) << p;
    }
    // Kadison-Schwarz: Φ(x*x) − Φ(x)*Φ(x) ⪰ 0.
    const auto gap = a.expectation(x.adjoint() * x) - px.adjoint() * px;
    for (const auto& ev : hermitian_eigenvalues(m, gap)) {
      EXPECT_GE(ev.minCoeff(), -m.tolerance());
    }
  }
}

TEST(TracialProperties, ExpectationIsDBimodular) {
  Rng rng(23);
  for (int t = 0; t < 40; ++t) {
    const auto m = random_algebra(rng, 3, 4);
    const auto a = build_nest_subalgebra(m, random_nest(m, rng));
    const auto d1 = random_in(a.diagonal(), rng);
    const auto d2 = random_in(a.diagonal(), rng);
    const auto x = random_gaussian(m, rng);
    EXPECT_TRUE(elements_near(a.expectation(d1 * x * d2), d1 * a.expectation(x) * d2, 1e-10));
  }
}

TEST(TracialProperties, GeneratedSubalgebraOfNest) {
  // A subalgebra generated by strictly upper elements is tracial but not
  // maximal subdiagonal unless it fills the nest.
  Rng rng(24);
  const auto m = FinVNAlgebra::uniform({3});
  const auto a = build_from_basis(m, {e(m, 1, 2) + e(m, 2, 3)});
  EXPECT_LE(tracial_residuals(a).max(), m.tolerance());
  EXPECT_FALSE(a.is_maximal_subdiagonal());
  EXPECT_TRUE(unique_extension_witness(a).has_value());
}

} // namespace
