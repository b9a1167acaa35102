#include "nchardy/subspace.hpp"

#include <algorithm>
#include <string>

#include "nchardy/tracial.hpp"

namespace nchardy {

namespace {

Matrix leading_left_vectors(const Matrix& g, Eigen::Index count) {
  if (count <= 0 || g.cols() == 0) {
    return Matrix(g.rows(), 0);
  }
  Eigen::JacobiSVD<Matrix> svd(g, Eigen::ComputeThinU);
  return svd.matrixU().leftCols(count);
}

Matrix coords_of(const FinVNAlgebra& m, const std::vector<AlgebraElement>& xs) {
  Matrix g(m.dim(), static_cast<Eigen::Index>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    g.col(static_cast<Eigen::Index>(i)) = m.to_coords(xs[i]);
  }
  return g;
}

} // namespace

Matrix orthonormal_columns(const Matrix& g, double tolerance, double scale_floor) {
  if (g.cols() == 0 || g.rows() == 0) {
    return Matrix(g.rows(), 0);
  }
  // For wide inputs reduce first: g = Rᴴ Qᴴ, so col(g) = col(Rᴴ) with the
  // same singular values.
  Matrix work;
  if (g.cols() > g.rows()) {
    Eigen::HouseholderQR<Matrix> qr(g.adjoint());
    work = qr.matrixQR().topRows(g.rows()).triangularView<Eigen::Upper>();
    work.adjointInPlace();
  } else {
    work = g;
  }
  Eigen::JacobiSVD<Matrix> svd(work, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  const double sigma_max = s.size() > 0 ? s(0) : 0.0;
  if (sigma_max == 0.0) {
    return Matrix(g.rows(), 0);
  }
  const double thr = tolerance * std::max(sigma_max, scale_floor);
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > thr) {
    ++rank;
  }
  return svd.matrixU().leftCols(rank);
}

Subspace::Subspace(FinVNAlgebra ambient) : ambient_(std::move(ambient)), basis_(ambient_.dim(), 0) {}

Subspace::Subspace(FinVNAlgebra ambient, Matrix orthonormal_coords)
    : ambient_(std::move(ambient)), basis_(std::move(orthonormal_coords)) {
  if (basis_.rows() != ambient_.dim()) {
    throw StructuralError("subspace coordinates have the wrong length");
  }
  const Eigen::Index d = basis_.cols();
  if (d > ambient_.dim()) {
    throw StructuralError("subspace dimension exceeds dim M");
  }
  if (d > 0) {
    const double err = (basis_.adjoint() * basis_ - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
    if (err > 100.0 * ambient_.tolerance() * static_cast<double>(d)) {
      throw InvariantError("subspace basis is not orthonormal", err);
    }
  }
}

AlgebraElement Subspace::element(Eigen::Index i) const {
  return ambient_.from_coords(basis_.col(i));
}

std::vector<AlgebraElement> Subspace::basis() const {
  std::vector<AlgebraElement> out;
  out.reserve(static_cast<std::size_t>(dim()));
  for (Eigen::Index i = 0; i < dim(); ++i) {
    out.push_back(element(i));
  }
  return out;
}

Vector Subspace::project_coords(const Vector& v) const {
  if (is_zero()) {
    return Vector::Zero(v.size());
  }
  return basis_ * (basis_.adjoint() * v);
}

AlgebraElement Subspace::project(const AlgebraElement& x) const {
  return ambient_.from_coords(project_coords(ambient_.to_coords(x)));
}

double Subspace::residual(const AlgebraElement& x) const {
  const Vector v = ambient_.to_coords(x);
  return (v - project_coords(v)).norm();
}

bool Subspace::contains(const AlgebraElement& x) const {
  const Vector v = ambient_.to_coords(x);
  return ambient_.negligible((v - project_coords(v)).norm(), v.norm());
}

bool Subspace::contains(const Subspace& other) const {
  if (other.dim() == 0) {
    return true;
  }
  const Matrix r = other.basis_ - basis_ * (basis_.adjoint() * other.basis_);
  for (Eigen::Index i = 0; i < r.cols(); ++i) {
    if (!ambient_.negligible(r.col(i).norm())) {
      return false;
    }
  }
  return true;
}

bool Subspace::equals(const Subspace& other) const {
  return dim() == other.dim() && contains(other) && other.contains(*this);
}

double subspace_distance(const Subspace& a, const Subspace& b) {
  if (a.dim() != b.dim()) {
    return 1.0;
  }
  if (a.dim() == 0) {
    return 0.0;
  }
  const Matrix r = a.coords() - b.coords() * (b.coords().adjoint() * a.coords());
  Eigen::JacobiSVD<Matrix> svd(r);
  return svd.singularValues()(0);
}

Subspace from_generators(const FinVNAlgebra& m, const std::vector<AlgebraElement>& gens) {
  return Subspace(m, orthonormal_columns(coords_of(m, gens), m.tolerance()));
}

Subspace right_module_span(const Subspace& s, const std::vector<AlgebraElement>& t) {
  const FinVNAlgebra& m = s.ambient();
  if (s.is_zero() || t.empty()) {
    return Subspace(m);
  }
  double t_scale = 0.0;
  for (const auto& x : t) {
    t_scale = std::max(t_scale, operator_norm(x));
  }
  const auto sb = s.basis();
  Matrix g(m.dim(), static_cast<Eigen::Index>(sb.size() * t.size()));
  Eigen::Index col = 0;
  for (const auto& x : sb) {
    for (const auto& y : t) {
      g.col(col++) = m.to_coords(x * y);
    }
  }
  return Subspace(m, orthonormal_columns(g, m.tolerance(), t_scale));
}

Subspace right_module_span(const Subspace& s, const Subspace& t) { return right_module_span(s, t.basis()); }

Subspace left_multiply(const AlgebraElement& x, const Subspace& s) {
  const FinVNAlgebra& m = s.ambient();
  Matrix g(m.dim(), s.dim());
  for (Eigen::Index i = 0; i < s.dim(); ++i) {
    g.col(i) = m.to_coords(x * s.element(i));
  }
  return Subspace(m, orthonormal_columns(g, m.tolerance(), operator_norm(x)));
}

Subspace join(const Subspace& a, const Subspace& b) {
  Matrix g(a.ambient().dim(), a.dim() + b.dim());
  g << a.coords(), b.coords();
  return Subspace(a.ambient(), orthonormal_columns(g, a.ambient().tolerance(), 1.0));
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  const FinVNAlgebra& m = a.ambient();
  if (a.is_zero() || b.is_zero()) {
    return Subspace(m);
  }
  // Null vectors (x, y) of [Qa, -Qb] give Qa x = Qb y in the intersection.
  Matrix g(m.dim(), a.dim() + b.dim());
  g << a.coords(), -b.coords();
  Eigen::JacobiSVD<Matrix> svd(g, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > m.tolerance()) {
    ++rank;
  }
  const Eigen::Index nullity = g.cols() - rank;
  if (nullity == 0) {
    return Subspace(m);
  }
  const Matrix x = a.coords() * svd.matrixV().topRightCorner(a.dim(), nullity);
  return Subspace(m, leading_left_vectors(x, nullity));
}

Subspace adjoint_subspace(const Subspace& s) {
  const FinVNAlgebra& m = s.ambient();
  Matrix g(m.dim(), s.dim());
  for (Eigen::Index i = 0; i < s.dim(); ++i) {
    g.col(i) = m.to_coords(s.element(i).adjoint());
  }
  return Subspace(m, std::move(g));
}

Subspace orthogonal_complement(const Subspace& s) {
  const FinVNAlgebra& m = s.ambient();
  if (s.is_zero()) {
    return Subspace(m, Matrix::Identity(m.dim(), m.dim()));
  }
  Eigen::HouseholderQR<Matrix> qr(s.coords());
  const Matrix q = qr.householderQ();
  return Subspace(m, q.rightCols(m.dim() - s.dim()));
}

Subspace ortho_complement_within(const Subspace& k, const Subspace& l) {
  const FinVNAlgebra& m = k.ambient();
  for (Eigen::Index i = 0; i < l.dim(); ++i) {
    const double r = k.residual(l.element(i));
    if (!m.negligible(r)) {
      throw PreconditionError("basis vector " + std::to_string(i) + " of the inner subspace is not contained in the outer one", r);
    }
  }
  if (l.is_zero()) {
    return k;
  }
  const Matrix c = k.coords() - l.coords() * (l.coords().adjoint() * k.coords());
  return Subspace(m, leading_left_vectors(c, k.dim() - l.dim()));
}

bool is_invariant(const Subspace& k, const TracialSubalgebra& a) {
  const FinVNAlgebra& m = k.ambient();
  for (Eigen::Index i = 0; i < k.dim(); ++i) {
    const AlgebraElement x = k.element(i);
    for (const auto& y : a.a_basis()) {
      const AlgebraElement xy = x * y;
      if (!m.negligible(k.residual(xy), l2_norm(m, xy))) {
        return false;
      }
    }
  }
  return true;
}

WanderingData wandering_subspace(const Subspace& k, const TracialSubalgebra& a) {
  if (!is_invariant(k, a)) {
    throw PreconditionError("subspace is not right invariant under the subalgebra");
  }
  Subspace ka0 = right_module_span(k, a.a0_basis());
  Subspace w = ortho_complement_within(k, ka0);
  return {k, std::move(ka0), std::move(w)};
}

bool is_simply_invariant(const Subspace& k, const TracialSubalgebra& a) {
  if (!is_invariant(k, a)) {
    throw PreconditionError("subspace is not right invariant under the subalgebra");
  }
  return right_module_span(k, a.a0_basis()).dim() < k.dim();
}

} // namespace nchardy
