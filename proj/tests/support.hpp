#pragma once

#include <gtest/gtest.h>

#include "nchardy/factorization.hpp"
#include "nchardy/random.hpp"

namespace nchardy::testing {

inline FinVNAlgebra m2() { return FinVNAlgebra::uniform({2}); }
inline FinVNAlgebra m3() { return FinVNAlgebra::uniform({3}); }

/// e_{ij} in the single block of Mₙ, 1-based like the usual notation.
inline AlgebraElement e(const FinVNAlgebra& m, int i, int j) { return m.matrix_unit(0, i - 1, j - 1); }

inline TracialSubalgebra upper(const FinVNAlgebra& m) {
  return build_nest_subalgebra(m, NestSpec::upper_triangular(m));
}

inline ::testing::AssertionResult elements_near(const AlgebraElement& x, const AlgebraElement& y,
                                                double tol = 1e-9) {
  if (!x.same_shape(y)) {
    return ::testing::AssertionFailure() << "shape mismatch";
  }
  const double d = (x - y).max_abs();
  if (d <= tol) {
    return ::testing::AssertionSuccess();
  }
  return ::testing::AssertionFailure() << "max entry difference " << d;
}

inline double max_diff(const AlgebraElement& x, const AlgebraElement& y) { return (x - y).max_abs(); }

} // namespace nchardy::testing
