#include "nchardy/tracial.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace nchardy {

NestSpec NestSpec::upper_triangular(const FinVNAlgebra& m) {
  NestSpec nest;
  for (const auto& b : m.blocks()) {
    nest.atoms.emplace_back(static_cast<std::size_t>(b.dim), 1);
  }
  return nest;
}

NestSpec NestSpec::trivial(const FinVNAlgebra& m) {
  NestSpec nest;
  for (const auto& b : m.blocks()) {
    nest.atoms.push_back({b.dim});
  }
  return nest;
}

void NestSpec::validate(const FinVNAlgebra& m) const {
  if (atoms.size() != m.num_blocks()) {
    throw StructuralError("nest lists " + std::to_string(atoms.size()) + " blocks, algebra has " +
                          std::to_string(m.num_blocks()));
  }
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    int covered = 0;
    for (int size : atoms[k]) {
      if (size < 1) {
        throw StructuralError("nest atoms must be nonempty (block " + std::to_string(k) + ")");
      }
      covered += size;
    }
    if (covered != m.block_dim(k)) {
      throw StructuralError("nest atoms of block " + std::to_string(k) + " cover " + std::to_string(covered) +
                            " indices, expected " + std::to_string(m.block_dim(k)));
    }
  }
}

NotTracialError::NotTracialError(AlgebraElement a, AlgebraElement b, double residual)
    : PreconditionError("expectation onto A ∩ A* is not multiplicative on A", residual),
      a_(std::move(a)),
      b_(std::move(b)) {}

TracialSubalgebra::TracialSubalgebra(Subspace a, Subspace d, std::vector<AlgebraElement> a_basis,
                                     std::vector<AlgebraElement> d_basis, std::vector<AlgebraElement> a0_basis)
    : a_(std::move(a)),
      d_(std::move(d)),
      a0_(from_generators(a_.ambient(), a0_basis)),
      a_basis_(std::move(a_basis)),
      d_basis_(std::move(d_basis)),
      a0_basis_(std::move(a0_basis)),
      phi_(d_.coords() * d_.coords().adjoint()),
      maximal_subdiagonal_(join(a_, adjoint_subspace(a_)).dim() == a_.ambient().dim()) {}

AlgebraElement TracialSubalgebra::expectation(const AlgebraElement& x) const {
  const FinVNAlgebra& m = ambient();
  return m.from_coords(phi_ * m.to_coords(x));
}

TracialSubalgebra build_nest_subalgebra(const FinVNAlgebra& m, const NestSpec& nest) {
  nest.validate(m);
  std::vector<AlgebraElement> a_basis;
  std::vector<AlgebraElement> d_basis;
  std::vector<AlgebraElement> a0_basis;
  for (std::size_t k = 0; k < m.num_blocks(); ++k) {
    std::vector<int> atom_of;
    for (std::size_t t = 0; t < nest.atoms[k].size(); ++t) {
      atom_of.insert(atom_of.end(), static_cast<std::size_t>(nest.atoms[k][t]), static_cast<int>(t));
    }
    const double scale = 1.0 / std::sqrt(m.weight(k));
    const int n = m.block_dim(k);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (atom_of[i] > atom_of[j]) {
          continue;
        }
        AlgebraElement e = m.matrix_unit(k, i, j) * Complex(scale);
        a_basis.push_back(e);
        (atom_of[i] == atom_of[j] ? d_basis : a0_basis).push_back(std::move(e));
      }
    }
  }
  Subspace a = from_generators(m, a_basis);
  Subspace d = from_generators(m, d_basis);
  return TracialSubalgebra(std::move(a), std::move(d), std::move(a_basis), std::move(d_basis), std::move(a0_basis));
}

TracialSubalgebra build_from_basis(const FinVNAlgebra& m, const std::vector<AlgebraElement>& generators) {
  std::vector<AlgebraElement> gens{m.identity()};
  for (const auto& g : generators) {
    m.check_conforms(g);
    gens.push_back(g);
  }
  Subspace a = from_generators(m, gens);
  // Close under multiplication; the dimension grows strictly until stable.
  for (;;) {
    const auto basis = a.basis();
    double scale = 0.0;
    for (const auto& x : basis) {
      scale = std::max(scale, operator_norm(x));
    }
    Matrix g(m.dim(), a.dim() + a.dim() * a.dim());
    g.leftCols(a.dim()) = a.coords();
    Eigen::Index col = a.dim();
    for (const auto& x : basis) {
      for (const auto& y : basis) {
        g.col(col++) = m.to_coords(x * y);
      }
    }
    Subspace next(m, orthonormal_columns(g, m.tolerance(), std::max(1.0, scale * scale)));
    if (next.dim() == a.dim()) {
      break;
    }
    a = std::move(next);
  }
  Subspace d = intersect(a, adjoint_subspace(a));
  Subspace a0 = ortho_complement_within(a, d);
  TracialSubalgebra out(a, d, a.basis(), d.basis(), a0.basis());

  for (const auto& x : out.a_basis()) {
    const AlgebraElement px = out.expectation(x);
    for (const auto& y : out.a_basis()) {
      const AlgebraElement xy = x * y;
      const double r = l2_norm(m, out.expectation(xy) - px * out.expectation(y));
      if (!m.negligible(r, l2_norm(m, xy))) {
        throw NotTracialError(x, y, r);
      }
    }
  }
  return out;
}

double TracialResiduals::max() const {
  return std::max({closure, multiplicativity, trace_preservation, bimodule, orthogonal_split});
}

TracialResiduals tracial_residuals(const TracialSubalgebra& a) {
  const FinVNAlgebra& m = a.ambient();
  TracialResiduals r;
  for (const auto& x : a.a_basis()) {
    const AlgebraElement px = a.expectation(x);
    for (const auto& y : a.a_basis()) {
      const AlgebraElement xy = x * y;
      r.closure = std::max(r.closure, a.algebra().residual(xy));
      r.multiplicativity = std::max(r.multiplicativity, l2_norm(m, a.expectation(xy) - px * a.expectation(y)));
    }
  }
  for (std::size_t k = 0; k < m.num_blocks(); ++k) {
    for (int i = 0; i < m.block_dim(k); ++i) {
      for (int j = 0; j < m.block_dim(k); ++j) {
        const AlgebraElement e = m.matrix_unit(k, i, j);
        r.trace_preservation = std::max(r.trace_preservation, std::abs(trace(m, a.expectation(e)) - trace(m, e)));
      }
    }
  }
  // Bimodularity on a fixed pseudo-random sample of triples.
  std::mt19937_64 rng(0x5eedu);
  std::normal_distribution<double> normal;
  auto random_in = [&](const Subspace& s) {
    Vector c(s.dim());
    for (auto& z : c) {
      z = Complex(normal(rng), normal(rng));
    }
    return m.from_coords(s.coords() * c);
  };
  const Subspace whole(m, Matrix::Identity(m.dim(), m.dim()));
  for (int t = 0; t < 8; ++t) {
    const AlgebraElement d1 = random_in(a.diagonal());
    const AlgebraElement d2 = random_in(a.diagonal());
    const AlgebraElement x = random_in(whole);
    r.bimodule = std::max(r.bimodule, l2_norm(m, a.expectation(d1 * x * d2) - d1 * a.expectation(x) * d2));
  }
  if (!a.diagonal().is_zero() && !a.a0().is_zero()) {
    r.orthogonal_split = (a.diagonal().coords().adjoint() * a.a0().coords()).cwiseAbs().maxCoeff();
  }
  const Subspace split = join(a.diagonal(), a.a0());
  r.orthogonal_split = std::max(r.orthogonal_split, subspace_distance(split, a.algebra()));
  return r;
}

std::optional<AlgebraElement> unique_extension_witness(const TracialSubalgebra& a) {
  const FinVNAlgebra& m = a.ambient();
  const Subspace annihilator = orthogonal_complement(adjoint_subspace(a.a0()));
  const Subspace star_closed = intersect(annihilator, adjoint_subspace(annihilator));
  const Subspace extra = ortho_complement_within(star_closed, a.diagonal());
  if (extra.is_zero()) {
    return std::nullopt;
  }
  const AlgebraElement b = extra.element(0);
  AlgebraElement e = b + b.adjoint();
  if (e.max_abs() < 0.5 * b.max_abs()) {
    e = (b - b.adjoint()) * Complex(0.0, 1.0);
  }
  AlgebraElement g = e + m.identity() * Complex(operator_norm(e));
  g *= Complex(1.0 / operator_norm(g));
  return g;
}

Subspace a_infinity(const TracialSubalgebra& a) { return a.algebra(); }

} // namespace nchardy
