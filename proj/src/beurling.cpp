#include "nchardy/beurling.hpp"

#include <algorithm>
#include <random>
#include <tuple>

namespace nchardy {

namespace {

// Decomposition identities are accepted at ten times the rank tolerance.
double check_threshold(const FinVNAlgebra& m) { return 10.0 * m.tolerance(); }

Eigen::Index element_rank(const FinVNAlgebra& m, const AlgebraElement& x) {
  std::vector<Eigen::VectorXd> sv;
  double sigma_max = 0.0;
  for (const auto& b : x.blocks()) {
    Eigen::JacobiSVD<Matrix> svd(b);
    sv.push_back(svd.singularValues());
    if (sv.back().size() > 0) {
      sigma_max = std::max(sigma_max, sv.back()(0));
    }
  }
  if (sigma_max == 0.0) {
    return 0;
  }
  const double thr = zero_threshold(sigma_max, m.tolerance());
  Eigen::Index r = 0;
  for (const auto& s : sv) {
    r += (s.array() > thr).count();
  }
  return r;
}

Eigen::Index cyclic_dim(const FinVNAlgebra& m, const AlgebraElement& x, const std::vector<AlgebraElement>& d) {
  Matrix g(m.dim(), static_cast<Eigen::Index>(d.size()));
  for (std::size_t j = 0; j < d.size(); ++j) {
    g.col(static_cast<Eigen::Index>(j)) = m.to_coords(x * d[j]);
  }
  return orthonormal_columns(g, m.tolerance()).cols();
}

Matrix random_unitary_matrix(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Matrix g(n, n);
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    g.data()[i] = Complex(normal(rng), normal(rng));
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  return qr.householderQ();
}

struct IsometryResiduals {
  double partial_isometry = 0.0;
  double initial_in_d = 0.0;
  double cross_products = 0.0;
};

IsometryResiduals isometry_residuals(const std::vector<AlgebraElement>& us, const TracialSubalgebra& a) {
  const FinVNAlgebra& m = a.ambient();
  IsometryResiduals r;
  for (std::size_t i = 0; i < us.size(); ++i) {
    const AlgebraElement e = us[i].adjoint() * us[i];
    r.partial_isometry = std::max(r.partial_isometry, projection_residual(e));
    r.initial_in_d = std::max(r.initial_in_d, l2_norm(m, e - a.expectation(e)));
    for (std::size_t j = 0; j < us.size(); ++j) {
      if (i != j) {
        r.cross_products = std::max(r.cross_products, (us[j].adjoint() * us[i]).max_abs());
      }
    }
  }
  return r;
}

} // namespace

std::string to_string(TypeLabel label) {
  switch (label) {
  case TypeLabel::Zero:
    return "Zero";
  case TypeLabel::Type1:
    return "Type1";
  case TypeLabel::Type2:
    return "Type2";
  case TypeLabel::Mixed:
    return "Mixed";
  }
  return "?";
}

GramResidual wandering_gram_residual(const Subspace& w, const TracialSubalgebra& a) {
  const FinVNAlgebra& m = a.ambient();
  GramResidual out;
  const auto basis = w.basis();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i; j < basis.size(); ++j) {
      const AlgebraElement x = basis[i].adjoint() * basis[j];
      const double r = l2_norm(m, x - a.expectation(x));
      if (r > out.residual || out.i < 0) {
        out = {r, static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)};
      }
    }
  }
  return out;
}

std::vector<AlgebraElement> extract_partial_isometries(const Subspace& w, const TracialSubalgebra& a,
                                                       const ExtractionOptions& options) {
  const FinVNAlgebra& m = a.ambient();
  const GramResidual gram = wandering_gram_residual(w, a);
  if (gram.residual > check_threshold(m)) {
    throw PreconditionError("W*W is not contained in span(D): witness pair (" + std::to_string(gram.i) + ", " +
                                std::to_string(gram.j) + ")",
                            gram.residual);
  }
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal;

  Matrix residual = w.coords();
  if (options.rotate_basis && residual.cols() > 1) {
    residual = residual * random_unitary_matrix(residual.cols(), rng);
  }

  std::vector<AlgebraElement> isometries;
  while (residual.cols() > 0) {
    Vector generic(residual.cols());
    for (auto& c : generic) {
      c = Complex(normal(rng), normal(rng));
    }
    const Eigen::Index n_candidates = residual.cols() + 1;
    std::tuple<Eigen::Index, Eigen::Index> best_score{-1, -1};
    AlgebraElement best;
    for (Eigen::Index c = 0; c < n_candidates; ++c) {
      const AlgebraElement x =
          c < residual.cols() ? m.from_coords(residual.col(c)) : m.from_coords(residual * generic.normalized());
      const std::tuple<Eigen::Index, Eigen::Index> score{cyclic_dim(m, x, a.d_basis()), element_rank(m, x)};
      if (score > best_score) {
        best_score = score;
        best = x;
      }
    }
    if (std::get<0>(best_score) == 0) {
      throw InvariantError("wandering residual collapsed before exhaustion", 0.0);
    }
    AlgebraElement u = polar_decompose(m, best).isometry;
    const AlgebraElement u_star = u.adjoint();

    Matrix deflated(m.dim(), residual.cols());
    for (Eigen::Index c = 0; c < residual.cols(); ++c) {
      const AlgebraElement v = m.from_coords(residual.col(c));
      deflated.col(c) = m.to_coords(v - u * a.expectation(u_star * v));
    }
    Matrix next = orthonormal_columns(deflated, m.tolerance(), 1.0);
    if (next.cols() >= residual.cols()) {
      throw InvariantError("deflation did not reduce the wandering residual", 0.0);
    }
    residual = std::move(next);
    isometries.push_back(std::move(u));
  }

  const IsometryResiduals r = isometry_residuals(isometries, a);
  const double worst = std::max({r.partial_isometry, r.initial_in_d, r.cross_products});
  if (worst > check_threshold(m)) {
    throw InvariantError("extracted partial isometries violate their relations", worst);
  }
  return isometries;
}

double DecompositionResiduals::max() const {
  return std::max({partial_isometry, initial_in_d, cross_products, isometries_kill_z, z_type2, z_invariant,
                   column_sum, z_kills_w, wandering_gram, k1_wandering, k1_from_isometries, reconstruction});
}

DecompositionResiduals decomposition_residuals(const TypeDecomposition& dec, const TracialSubalgebra& a) {
  const FinVNAlgebra& m = a.ambient();
  DecompositionResiduals r;
  const IsometryResiduals iso = isometry_residuals(dec.isometries, a);
  r.partial_isometry = iso.partial_isometry;
  r.initial_in_d = iso.initial_in_d;
  r.cross_products = iso.cross_products;

  const auto z_basis = dec.z.basis();
  const auto w_basis = dec.wandering.w.basis();
  const auto k1_basis = dec.k1.basis();
  for (const auto& z : z_basis) {
    for (const auto& u : dec.isometries) {
      r.isometries_kill_z = std::max(r.isometries_kill_z, (u.adjoint() * z).max_abs());
    }
    for (const auto& k : k1_basis) {
      r.column_sum = std::max(r.column_sum, (z.adjoint() * k).max_abs());
    }
    for (const auto& w : w_basis) {
      r.z_kills_w = std::max(r.z_kills_w, (z.adjoint() * w).max_abs());
    }
    for (const auto& x : a.a_basis()) {
      r.z_invariant = std::max(r.z_invariant, dec.z.residual(z * x));
    }
  }
  r.z_type2 = subspace_distance(right_module_span(dec.z, a.a0_basis()), dec.z);
  r.wandering_gram = wandering_gram_residual(dec.wandering.w, a).residual;
  r.k1_wandering = subspace_distance(wandering_subspace(dec.k1, a).w, dec.wandering.w);

  Subspace from_isometries(m);
  for (const auto& u : dec.isometries) {
    const Subspace span_u = right_module_span(from_generators(m, {u}), a.a_basis());
    r.sum_dim_isometry_spans += span_u.dim();
    from_isometries = join(from_isometries, span_u);
  }
  r.k1_from_isometries = subspace_distance(from_isometries, dec.k1);
  r.reconstruction = subspace_distance(join(dec.z, dec.k1), dec.k);
  r.dim_k = dec.k.dim();
  r.dim_z = dec.z.dim();
  return r;
}

TypeDecomposition type_decomposition(const Subspace& k, const TracialSubalgebra& a, const ExtractionOptions& options) {
  const FinVNAlgebra& m = a.ambient();
  if (!a.is_maximal_subdiagonal()) {
    throw PreconditionError("type decomposition requires a maximal subdiagonal algebra");
  }
  WanderingData wd = wandering_subspace(k, a);
  Subspace k1 = right_module_span(wd.w, a.a_basis());
  Subspace z = ortho_complement_within(k, k1);
  std::vector<AlgebraElement> isometries = extract_partial_isometries(wd.w, a, options);
  TypeDecomposition dec{k, std::move(z), std::move(k1), std::move(isometries), std::move(wd)};

  const DecompositionResiduals r = decomposition_residuals(dec, a);
  if (r.max() > check_threshold(m)) {
    throw InvariantError("type decomposition identities fail", r.max());
  }
  if (!r.dimensions_add_up()) {
    throw InvariantError("dim Z + sum dim(u_i A) != dim K",
                         static_cast<double>(r.dim_z + r.sum_dim_isometry_spans - r.dim_k));
  }
  return dec;
}

TypeLabel classify(const TypeDecomposition& dec) {
  if (dec.k.is_zero()) {
    return TypeLabel::Zero;
  }
  if (dec.wandering.w.is_zero()) {
    return TypeLabel::Type2;
  }
  if (dec.z.is_zero()) {
    return TypeLabel::Type1;
  }
  return TypeLabel::Mixed;
}

TypeLabel classify_type(const Subspace& k, const TracialSubalgebra& a) { return classify(type_decomposition(k, a)); }

std::optional<AlgebraElement> standard_generator(const TypeDecomposition& dec, const TracialSubalgebra& a) {
  const FinVNAlgebra& m = a.ambient();
  if (dec.k.is_zero() || !dec.z.is_zero() || dec.isometries.size() != 1) {
    return std::nullopt;
  }
  const AlgebraElement& u = dec.isometries.front();
  const AlgebraElement one = m.identity();
  if ((u.adjoint() * u - one).max_abs() > check_threshold(m)) {
    return std::nullopt;
  }
  const double co_isometry = (u * u.adjoint() - one).max_abs();
  if (co_isometry > check_threshold(m)) {
    throw InvariantError("u*u = 1 but uu* != 1", co_isometry);
  }
  const double span_gap = subspace_distance(right_module_span(from_generators(m, {u}), a.a_basis()), dec.k);
  if (span_gap > check_threshold(m)) {
    throw InvariantError("span(uA) differs from K", span_gap);
  }
  return u;
}

AlgebraElement theta_projection(const TypeDecomposition& dec, const TracialSubalgebra& a, const AlgebraElement& w) {
  const FinVNAlgebra& m = a.ambient();
  const double r = dec.k.residual(w);
  if (!m.negligible(r, l2_norm(m, w))) {
    throw PreconditionError("theta_projection: element is not in K", r);
  }
  AlgebraElement out = m.zero();
  for (const auto& u : dec.isometries) {
    out += u * a.expectation(u.adjoint() * w);
  }
  return out;
}

} // namespace nchardy
