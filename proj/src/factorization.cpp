#include "nchardy/factorization.hpp"

#include <algorithm>
#include <cmath>

#include "nchardy/random.hpp"

namespace nchardy {

namespace {

double check_threshold(const FinVNAlgebra& m) { return 10.0 * m.tolerance(); }

void require_maximal_subdiagonal(const TracialSubalgebra& a) {
  if (!a.is_maximal_subdiagonal()) {
    throw PreconditionError("factorization requires a maximal subdiagonal algebra");
  }
}

bool is_positive_definite(const FinVNAlgebra& m, const AlgebraElement& f) {
  const double scale = std::max(1.0, f.max_abs());
  if ((f - f.adjoint()).max_abs() > m.tolerance() * scale) {
    return false;
  }
  double lo = 0.0;
  double hi = 0.0;
  bool first = true;
  for (const auto& ev : hermitian_eigenvalues(m, f)) {
    lo = first ? ev.minCoeff() : std::min(lo, ev.minCoeff());
    hi = first ? ev.maxCoeff() : std::max(hi, ev.maxCoeff());
    first = false;
  }
  return lo > m.tolerance() * std::max(1.0, hi);
}

// Rotates (u, h) by the polar part v ∈ D of Φ(h) so that Φ(h) ≥ 0, when Φ(h)
// is invertible in (u*u)D(u*u). Leaves the pair unchanged otherwise.
void normalize_pair(const TracialSubalgebra& a, InnerOuterPair& pair) {
  const FinVNAlgebra& m = a.ambient();
  const AlgebraElement e = pair.inner.adjoint() * pair.inner;
  const AlgebraElement v = polar_decompose(m, a.expectation(pair.outer)).isometry;
  const double gap = std::max((v.adjoint() * v - e).max_abs(), (v * v.adjoint() - e).max_abs());
  if (gap > check_threshold(m)) {
    return;
  }
  pair.inner = pair.inner * v;
  pair.outer = v.adjoint() * pair.outer;
}

Subspace span_times_algebra(const AlgebraElement& x, const TracialSubalgebra& a) {
  return right_module_span(from_generators(a.ambient(), {x}), a.a_basis());
}

void verify(const InnerOuterFactorization& fac, const TracialSubalgebra& a) {
  const FactorizationResiduals r = factorization_residuals(fac, a);
  if (r.max() > check_threshold(a.ambient())) {
    throw InvariantError("inner-outer factorization identities fail", r.max());
  }
}

} // namespace

std::string to_string(FactorizationKind kind) {
  switch (kind) {
  case FactorizationKind::Unitary:
    return "Unitary";
  case FactorizationKind::Partial:
    return "Partial";
  case FactorizationKind::Sum:
    return "Sum";
  }
  return "?";
}

Subspace invariant_hull(const AlgebraElement& f, const TracialSubalgebra& a) {
  const FinVNAlgebra& m = a.ambient();
  m.check_conforms(f);
  std::vector<AlgebraElement> gens;
  gens.reserve(a.a_basis().size());
  for (const auto& x : a.a_basis()) {
    gens.push_back(f * x);
  }
  return from_generators(m, gens);
}

bool is_wandering_vector(const AlgebraElement& f, const TracialSubalgebra& a) {
  const FinVNAlgebra& m = a.ambient();
  const double nf = l2_norm(m, f);
  for (const auto& x : a.a0_basis()) {
    const AlgebraElement fx = f * x;
    if (!m.negligible(std::abs(inner(m, f, fx)), nf * l2_norm(m, fx))) {
      return false;
    }
  }
  return true;
}

bool is_separating(const AlgebraElement& f, const TracialSubalgebra& a) {
  const FinVNAlgebra& m = a.ambient();
  Matrix g(m.dim(), static_cast<Eigen::Index>(a.d_basis().size()));
  for (std::size_t j = 0; j < a.d_basis().size(); ++j) {
    g.col(static_cast<Eigen::Index>(j)) = m.to_coords(f * a.d_basis()[j]);
  }
  return orthonormal_columns(g, m.tolerance()).cols() == g.cols();
}

bool is_outer(const AlgebraElement& h, const TracialSubalgebra& a) {
  if (!a.algebra().contains(h)) {
    return false;
  }
  return span_times_algebra(h, a).dim() == a.algebra().dim();
}

std::optional<InnerOuterFactorization> bn_factorize(const AlgebraElement& f, const TracialSubalgebra& a) {
  require_maximal_subdiagonal(a);
  const Subspace hull = invariant_hull(f, a);
  if (hull.is_zero()) {
    return std::nullopt;
  }
  const TypeDecomposition dec = type_decomposition(hull, a);
  const auto u = standard_generator(dec, a);
  if (!u) {
    return std::nullopt;
  }
  InnerOuterPair pair{*u, u->adjoint() * f};
  normalize_pair(a, pair);
  InnerOuterFactorization fac{f, {std::move(pair)}, FactorizationKind::Unitary};
  verify(fac, a);
  if (!is_outer(fac.pairs.front().outer, a)) {
    throw InvariantError("inner-outer factorization produced a non-outer h", 1.0);
  }
  return fac;
}

std::optional<InnerOuterFactorization> partial_bn_factorize(const AlgebraElement& f, const TracialSubalgebra& a) {
  require_maximal_subdiagonal(a);
  const FinVNAlgebra& m = a.ambient();
  if (!is_wandering_vector(f, a) && !is_positive_definite(m, f)) {
    throw PreconditionError("partial factorization needs a wandering vector or a positive definite element");
  }
  const Subspace hull = invariant_hull(f, a);
  if (hull.is_zero()) {
    return std::nullopt;
  }
  const TypeDecomposition dec = type_decomposition(hull, a);
  if (dec.isometries.size() != 1) {
    throw InvariantError("wandering subspace of the hull is not cyclic",
                         static_cast<double>(dec.isometries.size()));
  }
  InnerOuterPair pair{dec.isometries.front(), dec.isometries.front().adjoint() * f};
  normalize_pair(a, pair);
  const AlgebraElement e = pair.inner.adjoint() * pair.inner;
  const bool unitary = (e - m.identity()).max_abs() <= check_threshold(m);
  InnerOuterFactorization fac{f, {std::move(pair)}, unitary ? FactorizationKind::Unitary : FactorizationKind::Partial};
  verify(fac, a);
  return fac;
}

std::optional<InnerOuterFactorization> inner_outer_sum(const AlgebraElement& f, const TracialSubalgebra& a) {
  require_maximal_subdiagonal(a);
  const Subspace hull = invariant_hull(f, a);
  if (hull.is_zero()) {
    return std::nullopt;
  }
  const TypeDecomposition dec = type_decomposition(hull, a);
  if (classify(dec) != TypeLabel::Type1) {
    return std::nullopt;
  }
  InnerOuterFactorization fac{f, {}, FactorizationKind::Sum};
  for (const auto& u : dec.isometries) {
    InnerOuterPair pair{u, u.adjoint() * f};
    normalize_pair(a, pair);
    fac.pairs.push_back(std::move(pair));
  }
  verify(fac, a);
  return fac;
}

double FactorizationResiduals::max() const {
  return std::max({reconstruction, partial_isometry, initial_in_d, cross_products, outer_in_a, support,
                   initial_in_hull, unitary, hull_gap});
}

FactorizationResiduals factorization_residuals(const InnerOuterFactorization& fac, const TracialSubalgebra& a) {
  const FinVNAlgebra& m = a.ambient();
  FactorizationResiduals r;
  AlgebraElement sum = m.zero();
  for (std::size_t i = 0; i < fac.pairs.size(); ++i) {
    const auto& [u, h] = fac.pairs[i];
    sum += u * h;
    const AlgebraElement e = u.adjoint() * u;
    r.partial_isometry = std::max(r.partial_isometry, projection_residual(e));
    r.initial_in_d = std::max(r.initial_in_d, l2_norm(m, e - a.expectation(e)));
    for (std::size_t j = 0; j < fac.pairs.size(); ++j) {
      if (i != j) {
        r.cross_products = std::max(r.cross_products, (fac.pairs[j].inner.adjoint() * u).max_abs());
      }
    }
    r.outer_in_a = std::max(r.outer_in_a, a.algebra().residual(h));
    r.support = std::max(r.support, l2_norm(m, e * h - h));
    const Subspace h_hull = span_times_algebra(h, a);
    r.initial_in_hull = std::max(r.initial_in_hull, h_hull.residual(e));
    if (fac.kind != FactorizationKind::Sum) {
      r.hull_gap = std::max(r.hull_gap, subspace_distance(h_hull, left_multiply(e, a.algebra())));
    }
    if (fac.kind == FactorizationKind::Unitary) {
      r.unitary = std::max({r.unitary, (e - m.identity()).max_abs(), (u * u.adjoint() - m.identity()).max_abs()});
    }
  }
  r.reconstruction = l2_norm(m, fac.f - sum);
  return r;
}

double ColumnSumNorms::absolute() const { return std::abs(lhs - rhs); }

double ColumnSumNorms::relative() const {
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  return scale > 0.0 ? absolute() / scale : 0.0;
}

ColumnSumNorms column_sum_norms(const FinVNAlgebra& m, const std::vector<AlgebraElement>& xs, LpIndex p) {
  AlgebraElement sum = m.zero();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    m.check_conforms(xs[i]);
    sum += xs[i];
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (i == j) {
        continue;
      }
      const double r = (xs[i].adjoint() * xs[j]).max_abs();
      if (!m.negligible(r, xs[i].max_abs() * xs[j].max_abs())) {
        throw PreconditionError("column sum needs x_i* x_j = 0: witness (" + std::to_string(i) + ", " +
                                    std::to_string(j) + ")",
                                r);
      }
    }
  }
  ColumnSumNorms out;
  if (p.is_infinite()) {
    out.lhs = operator_norm(sum);
  } else {
    const double n = lp_norm(m, sum, p);
    out.lhs = std::pow(n, p.value());
  }
  // External column norm: singular values of the stacked column (xᵢ).
  for (std::size_t k = 0; k < m.num_blocks(); ++k) {
    const int n = m.block_dim(k);
    if (xs.empty()) {
      continue;
    }
    Matrix stacked(static_cast<Eigen::Index>(xs.size()) * n, n);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      stacked.middleRows(static_cast<Eigen::Index>(i) * n, n) = xs[i].block(k);
    }
    Eigen::JacobiSVD<Matrix> svd(stacked);
    const auto& s = svd.singularValues();
    if (p.is_infinite()) {
      out.rhs = std::max(out.rhs, s(0));
    } else {
      out.rhs += m.weight(k) * s.array().pow(p.value()).sum();
    }
  }
  return out;
}

double column_sum_norm_residual(const FinVNAlgebra& m, const std::vector<AlgebraElement>& xs, LpIndex p) {
  return column_sum_norms(m, xs, p).absolute();
}

std::optional<AlgebraElement> istr_witness(const FinVNAlgebra& m, const AlgebraElement& v, const AlgebraElement& e,
                                           double p, int trials, std::uint64_t seed) {
  m.check_conforms(v);
  m.check_conforms(e);
  if (!(p > 0.0) || std::isinf(p)) {
    throw PreconditionError("istr_witness needs 0 < p < infinity");
  }
  const double e_residual = projection_residual(e);
  if (e_residual > check_threshold(m)) {
    throw PreconditionError("istr_witness: e is not a projection", e_residual);
  }
  // Validates v ≥ 0 (throws DomainError otherwise).
  (void)positive_power(m, v, 1.0);

  const auto separates = [&](const AlgebraElement& d) {
    const double lhs = trace(m, positive_power(m, d.adjoint() * v * d, p)).real();
    const double rhs = trace(m, positive_power(m, d.adjoint() * e * d, p)).real();
    return !m.negligible(std::abs(lhs - rhs), std::max(std::abs(lhs), std::abs(rhs)));
  };

  Rng rng(seed);
  if ((v - e).max_abs() <= m.tolerance()) {
    return std::nullopt;
  }

  const AlgebraElement one = m.identity();
  std::vector<AlgebraElement> candidates{one, e, one - e};
  for (std::size_t k = 0; k < m.num_blocks(); ++k) {
    const Matrix vk = (v.block(k) + v.block(k).adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(vk);
    const auto& ev = solver.eigenvalues();
    const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
    Eigen::Index start = 0;
    while (start < ev.size()) {
      Eigen::Index end = start + 1;
      while (end < ev.size() && ev(end) - ev(start) <= m.tolerance() * scale) {
        ++end;
      }
      const Matrix vecs = solver.eigenvectors().middleCols(start, end - start);
      AlgebraElement proj = m.zero();
      proj.block(k) = vecs * vecs.adjoint();
      candidates.push_back(std::move(proj));
      start = end;
    }
  }
  for (const auto& d : candidates) {
    if (separates(d)) {
      return d;
    }
  }
  for (int t = 0; t < trials; ++t) {
    AlgebraElement d = random_gaussian(m, rng);
    if (separates(d)) {
      return d;
    }
  }
  return std::nullopt;
}

} // namespace nchardy
