#include <cmath>
#include <limits>

#include "support.hpp"

using namespace nchardy;
using namespace nchardy::testing;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

TEST(FinVNAlgebra, RejectsNonStateWeights) {
  EXPECT_THROW(FinVNAlgebra({{2, 0.25}}), DomainError);
  EXPECT_THROW(FinVNAlgebra({{2, -0.5}, {1, 2.0}}), DomainError);
  EXPECT_THROW(FinVNAlgebra({{0, 1.0}}), StructuralError);
  EXPECT_THROW(FinVNAlgebra(std::vector<Block>{}), StructuralError);
  EXPECT_NO_THROW(FinVNAlgebra({{1, 1.0 / 3.0}, {2, 1.0 / 3.0}}));
}

TEST(FinVNAlgebra, DimensionsAndShapeChecks) {
  const auto m = FinVNAlgebra::uniform({1, 2});
  EXPECT_EQ(m.total_dim(), 3);
  EXPECT_EQ(m.dim(), 5);
  const auto other = m2();
  EXPECT_THROW(trace(m, other.identity()), StructuralError);
  EXPECT_THROW(m.identity() * other.identity(), StructuralError);
}

TEST(FinVNAlgebra, CoordinatesAreIsometric) {
  Rng rng(11);
  const auto m = FinVNAlgebra({{1, 0.2}, {2, 0.4}});
  for (int t = 0; t < 20; ++t) {
    const auto x = random_gaussian(m, rng);
    const auto y = random_gaussian(m, rng);
    const Complex lhs = m.to_coords(y).dot(m.to_coords(x));
    EXPECT_LT(std::abs(lhs - inner(m, x, y)), 1e-12);
    EXPECT_TRUE(elements_near(m.from_coords(m.to_coords(x)), x, 1e-14));
  }
}

TEST(Trace, Examples) {
  const auto m = m2();
  EXPECT_NEAR(trace(m, m.identity()).real(), 1.0, 1e-15);
  EXPECT_NEAR(trace(m, e(m, 1, 1)).real(), 0.5, 1e-15);
  const FinVNAlgebra m12({{1, 1.0 / 3.0}, {2, 1.0 / 3.0}});
  const auto x = m12.element({Matrix::Identity(1, 1), Matrix::Zero(2, 2)});
  EXPECT_NEAR(trace(m12, x).real(), 1.0 / 3.0, 1e-15);
}

TEST(LpNorm, Examples) {
  const auto m = m2();
  for (double p : {1.0, 1.5, 2.0, 3.0, kInf}) {
    EXPECT_NEAR(lp_norm(m, m.identity(), LpIndex(p)), 1.0, 1e-14) << p;
  }
  EXPECT_NEAR(lp_norm(m, e(m, 1, 1), LpIndex(2)), std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(lp_norm(m, e(m, 1, 1), LpIndex::infinity()), 1.0, 1e-15);
  EXPECT_THROW(LpIndex(0.5), DomainError);
  EXPECT_THROW(LpIndex(std::nan("")), DomainError);
}

TEST(LpNorm, ConjugateExponent) {
  EXPECT_DOUBLE_EQ(LpIndex(2).conjugate().value(), 2.0);
  EXPECT_TRUE(LpIndex(1).conjugate().is_infinite());
  EXPECT_DOUBLE_EQ(LpIndex::infinity().conjugate().value(), 1.0);
  EXPECT_DOUBLE_EQ(LpIndex(4).conjugate().value(), 4.0 / 3.0);
}

TEST(Polar, Examples) {
  const auto m = m2();
  auto pd = polar_decompose(m, m.identity());
  EXPECT_TRUE(elements_near(pd.isometry, m.identity()));
  EXPECT_TRUE(elements_near(pd.modulus, m.identity()));

  pd = polar_decompose(m, 2.0 * e(m, 1, 2));
  EXPECT_TRUE(elements_near(pd.isometry, e(m, 1, 2)));
  EXPECT_TRUE(elements_near(pd.modulus, 2.0 * e(m, 2, 2)));

  pd = polar_decompose(m, m.zero());
  EXPECT_TRUE(elements_near(pd.isometry, m.zero(), 0.0));
  EXPECT_TRUE(elements_near(pd.modulus, m.zero(), 0.0));
}

TEST(PositivePower, Examples) {
  const auto m = m2();
  EXPECT_TRUE(elements_near(positive_power(m, m.identity(), 0.37), m.identity()));
  EXPECT_TRUE(elements_near(positive_power(m, 4.0 * e(m, 1, 1), 0.5), 2.0 * e(m, 1, 1)));
  EXPECT_TRUE(elements_near(positive_power(m, 4.0 * e(m, 1, 1), -0.5), 0.5 * e(m, 1, 1)));
}

TEST(PositivePower, RejectsNonPositiveInput) {
  const auto m = m2();
  try {
    positive_power(m, m.identity() - 3.0 * e(m, 1, 1), 0.5);
    FAIL() << "expected DomainError";
  } catch (const DomainError& err) {
    EXPECT_NE(std::string(err.what()).find("-2"), std::string::npos) << err.what();
  }
  EXPECT_THROW(positive_power(m, e(m, 1, 2), 1.0), DomainError);
}

TEST(SupportProjection, Examples) {
  const auto m = m2();
  EXPECT_TRUE(elements_near(support_projection(m, m.identity()), m.identity()));
  EXPECT_TRUE(elements_near(support_projection(m, 3.0 * e(m, 1, 1)), e(m, 1, 1)));
  EXPECT_TRUE(elements_near(support_projection(m, m.zero()), m.zero(), 0.0));
}

// Property tests over random algebras with up to 3 blocks of size up to 5.

TEST(AlgebraProperties, TraceIsTracial) {
  Rng rng(1);
  for (int t = 0; t < 100; ++t) {
    const auto m = random_algebra(rng, 3, 5);
    const auto x = random_gaussian(m, rng);
    const auto y = random_gaussian(m, rng);
    EXPECT_LE(std::abs(trace(m, x * y) - trace(m, y * x)), m.tolerance());
    EXPECT_TRUE(elements_near(x.adjoint().adjoint(), x, 0.0));
  }
}

TEST(AlgebraProperties, Holder) {
  Rng rng(2);
  for (int t = 0; t < 100; ++t) {
    const auto m = random_algebra(rng, 3, 5);
    const auto x = random_gaussian(m, rng);
    const auto y = random_low_rank(m, rng, 2);
    for (double p : {1.0, 4.0 / 3.0, 2.0, 4.0, kInf}) {
      const LpIndex lp(p);
      const double lhs = std::abs(trace(m, y.adjoint() * x));
      const double rhs = lp_norm(m, x, lp) * lp_norm(m, y, lp.conjugate());
      EXPECT_LE(lhs, rhs + m.tolerance()) << "p = " << p;
    }
  }
}

TEST(AlgebraProperties, PolarReconstruction) {
  Rng rng(3);
  for (int t = 0; t < 100; ++t) {
    const auto m = random_algebra(rng, 3, 5);
    const auto x = (t % 2 == 0) ? random_gaussian(m, rng) : random_low_rank(m, rng, 1 + t % 3);
    const auto [u, pos] = polar_decompose(m, x);
    EXPECT_LE(lp_norm(m, x - u * pos, LpIndex::infinity()), 10 * m.tolerance());
    EXPECT_TRUE(elements_near(u.adjoint() * u * pos, pos, 10 * m.tolerance()));
    EXPECT_LE(projection_residual(u.adjoint() * u), 10 * m.tolerance());
  }
}

TEST(AlgebraProperties, LpNormMonotoneInP) {
  Rng rng(4);
  const std::vector<double> ps{1.0, 1.5, 2.0, 3.0, 4.0, kInf};
  for (int t = 0; t < 100; ++t) {
    const auto m = random_algebra(rng, 3, 5);
    const auto x = random_gaussian(m, rng);
    for (std::size_t i = 0; i + 1 < ps.size(); ++i) {
      EXPECT_LE(lp_norm(m, x, LpIndex(ps[i])), lp_norm(m, x, LpIndex(ps[i + 1])) + m.tolerance());
    }
  }
}

TEST(AlgebraProperties, TwoNormMatchesInnerProduct) {
  Rng rng(5);
  for (int t = 0; t < 50; ++t) {
    const auto m = random_algebra(rng, 3, 5);
    const auto x = random_gaussian(m, rng);
    EXPECT_NEAR(l2_norm(m, x), std::sqrt(inner(m, x, x).real()), 1e-12);
    EXPECT_NEAR(lp_norm(m, x, LpIndex(2)), l2_norm(m, x), 1e-12);
  }
}

TEST(AlgebraProperties, PowersCompose) {
  Rng rng(6);
  for (int t = 0; t < 50; ++t) {
    const auto m = random_algebra(rng, 3, 5);
    const auto f = random_positive_definite(m, rng);
    const auto half = positive_power(m, f, 0.5);
    EXPECT_TRUE(elements_near(half * half, f, 1e-10));
    const auto inv = positive_power(m, f, -1.0);
    EXPECT_TRUE(elements_near(inv * f, m.identity(), 1e-8));
  }
}

} // namespace
