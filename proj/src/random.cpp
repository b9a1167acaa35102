#include "nchardy/random.hpp"

#include <algorithm>

namespace nchardy {

namespace {

Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Matrix g(rows, cols);
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    g.data()[i] = Complex(normal(rng), normal(rng));
  }
  return g;
}

AlgebraElement normalized(const FinVNAlgebra& m, AlgebraElement x) {
  const double n = l2_norm(m, x);
  if (n > 0.0) {
    x *= Complex(1.0 / n);
  }
  return x;
}

} // namespace

AlgebraElement random_gaussian(const FinVNAlgebra& m, Rng& rng) {
  std::vector<Matrix> blocks;
  for (const auto& b : m.blocks()) {
    blocks.push_back(gaussian_matrix(b.dim, b.dim, rng));
  }
  return normalized(m, AlgebraElement(std::move(blocks)));
}

AlgebraElement random_low_rank(const FinVNAlgebra& m, Rng& rng, int r) {
  std::vector<Matrix> blocks;
  for (const auto& b : m.blocks()) {
    const int inner = std::clamp(r, 1, b.dim);
    blocks.push_back(gaussian_matrix(b.dim, inner, rng) * gaussian_matrix(inner, b.dim, rng));
  }
  return normalized(m, AlgebraElement(std::move(blocks)));
}

AlgebraElement random_unitary(const FinVNAlgebra& m, Rng& rng) {
  std::vector<Matrix> blocks;
  for (const auto& b : m.blocks()) {
    const Matrix g = gaussian_matrix(b.dim, b.dim, rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    // Fix the phases of R's diagonal so that q is Haar distributed.
    const Matrix& r = qr.matrixQR();
    for (int j = 0; j < b.dim; ++j) {
      const double a = std::abs(r(j, j));
      if (a > 0.0) {
        q.col(j) *= r(j, j) / a;
      }
    }
    blocks.push_back(std::move(q));
  }
  return AlgebraElement(std::move(blocks));
}

AlgebraElement random_positive_definite(const FinVNAlgebra& m, Rng& rng) {
  std::uniform_real_distribution<double> shift(0.1, 1.0);
  const AlgebraElement g = random_gaussian(m, rng);
  return normalized(m, g.adjoint() * g + m.identity() * Complex(shift(rng)));
}

std::pair<AlgebraElement, AlgebraElement> random_complementary_projections(const FinVNAlgebra& m, Rng& rng) {
  const AlgebraElement u = random_unitary(m, rng);
  std::vector<int> ranks;
  int total = 0;
  for (const auto& b : m.blocks()) {
    ranks.push_back(static_cast<int>(rng() % static_cast<std::uint64_t>(b.dim + 1)));
    total += ranks.back();
  }
  // Keep both projections nonzero when possible.
  if (m.total_dim() > 1) {
    if (total == 0) {
      ranks.front() = 1;
    } else if (total == m.total_dim()) {
      ranks.front() -= 1;
    }
  }
  std::vector<Matrix> p;
  std::vector<Matrix> q;
  for (std::size_t k = 0; k < m.num_blocks(); ++k) {
    const int n = m.block_dim(k);
    const Matrix& uk = u.block(k);
    const Matrix head = uk.leftCols(ranks[k]);
    const Matrix tail = uk.rightCols(n - ranks[k]);
    p.push_back(head * head.adjoint());
    q.push_back(tail * tail.adjoint());
  }
  return {AlgebraElement(std::move(p)), AlgebraElement(std::move(q))};
}

AlgebraElement random_in(const Subspace& s, Rng& rng) {
  const FinVNAlgebra& m = s.ambient();
  if (s.is_zero()) {
    return m.zero();
  }
  const Vector c = gaussian_matrix(s.dim(), 1, rng).col(0);
  return normalized(m, m.from_coords(s.coords() * c));
}

FinVNAlgebra random_algebra(Rng& rng, int max_blocks, int max_dim, double tolerance) {
  std::uniform_int_distribution<int> nblocks(1, max_blocks);
  std::uniform_int_distribution<int> size(1, max_dim);
  std::uniform_real_distribution<double> raw_weight(0.5, 1.5);
  const int count = nblocks(rng);
  std::vector<int> dims;
  std::vector<double> raw;
  double state = 0.0;
  for (int k = 0; k < count; ++k) {
    dims.push_back(size(rng));
    raw.push_back(raw_weight(rng));
    state += raw.back() * dims.back();
  }
  std::vector<Block> blocks;
  for (int k = 0; k < count; ++k) {
    blocks.push_back({dims[k], raw[k] / state});
  }
  return FinVNAlgebra(std::move(blocks), tolerance);
}

NestSpec random_nest(const FinVNAlgebra& m, Rng& rng) {
  NestSpec nest;
  std::bernoulli_distribution cut(0.6);
  for (const auto& b : m.blocks()) {
    std::vector<int> atoms{1};
    for (int i = 1; i < b.dim; ++i) {
      if (cut(rng)) {
        atoms.push_back(1);
      } else {
        ++atoms.back();
      }
    }
    nest.atoms.push_back(std::move(atoms));
  }
  return nest;
}

Subspace random_invariant_subspace(const TracialSubalgebra& a, std::uint64_t seed, const RandomSubspaceOptions& options) {
  const FinVNAlgebra& m = a.ambient();
  Rng rng(seed);
  int k = options.generators;
  if (k < 0) {
    std::uniform_int_distribution<int> count(1, static_cast<int>(m.dim()));
    k = count(rng);
  }
  std::uniform_int_distribution<int> rank(1, std::max(1, m.total_dim()));
  std::vector<AlgebraElement> gens;
  for (int i = 0; i < k; ++i) {
    gens.push_back(options.low_rank ? random_low_rank(m, rng, rank(rng)) : random_gaussian(m, rng));
  }
  return right_module_span(from_generators(m, gens), a.a_basis());
}

} // namespace nchardy
