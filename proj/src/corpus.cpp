#include "splitci/corpus.hpp"

#include "splitci/random.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace splitci {

namespace {

Index draw_rank(SplitMix64& choices, Index n) {
  return static_cast<Index>(choices.next() % static_cast<std::uint64_t>(n + 1));
}

struct Source {
  SymMatrix dependent;
  SymMatrix independent;
};

Source random_source(Index n, SplitMix64& choices, std::uint64_t dep_seed,
                     std::uint64_t ind_seed) {
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  const SymMatrix ridge = 0.05 * SymMatrix::identity(n);
  const Index dep_rank = draw_rank(choices, n);
  const Index ind_rank = draw_rank(choices, n);
  const bool pure_ci = dep_rank == n && choices.next() % 4 == 0;
  SymMatrix dependent = random_psd(n, dep_rank, scale, dep_seed);
  if (pure_ci) return {dependent + ridge, SymMatrix::zero(n)};
  return {std::move(dependent), random_psd(n, ind_rank, scale, ind_seed) + ridge};
}

}  // namespace

SplitPair random_split_pair(Index n, std::uint64_t seed) {
  SplitMix64 choices(derive_seed(seed, 0));
  Source first = random_source(n, choices, derive_seed(seed, 1), derive_seed(seed, 2));
  Source second = random_source(n, choices, derive_seed(seed, 3), derive_seed(seed, 4));
  return SplitPair(std::move(first.dependent), std::move(first.independent),
                   std::move(second.dependent), std::move(second.independent));
}

SymMatrix random_pd(Index n, std::uint64_t seed) {
  return random_psd(n, n, 1.0, seed) / static_cast<double>(n) + 0.1 * SymMatrix::identity(n);
}

Matrix random_matrix(Index rows, Index cols, std::uint64_t seed) {
  NormalStream normal(seed);
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) m(i, j) = normal.next();
  }
  return m;
}

AdmissibleTriple random_admissible_triple(Index n, std::uint64_t seed) {
  SplitMix64 choices(derive_seed(seed, 0));
  const double inv_n = 1.0 / static_cast<double>(n);
  SymMatrix x = random_psd(n, n, 1.0, derive_seed(seed, 1)) * inv_n +
                0.05 * SymMatrix::identity(n);
  SymMatrix y = x + random_psd(n, draw_rank(choices, n), 1.0, derive_seed(seed, 2)) * inv_n;

  const SymMatrix raw = 2.0 * inv_n * random_psd(n, draw_rank(choices, n), 1.0, derive_seed(seed, 3));
  Eigen::SelfAdjointEigenSolver<Matrix> w_eig(raw.matrix());
  const Vector clipped = w_eig.eigenvalues().cwiseMax(0.0).cwiseMin(1.0);
  const Matrix w = w_eig.eigenvectors() * clipped.asDiagonal() * w_eig.eigenvectors().transpose();

  Eigen::SelfAdjointEigenSolver<Matrix> x_eig(x.matrix());
  const Matrix x_half = x_eig.operatorSqrt();
  SymMatrix z(x_half * w * x_half);
  return {std::move(x), std::move(y), std::move(z)};
}

}  // namespace splitci
