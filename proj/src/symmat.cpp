#include "splitci/symmat.hpp"

#include "splitci/errors.hpp"
#include "splitci/random.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>

namespace splitci {

SymMatrix::SymMatrix(const Matrix& m) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw DimensionMismatch("SymMatrix requires a non-empty square matrix, got " +
                            std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  m_ = 0.5 * (m + m.transpose());
}

SymMatrix SymMatrix::zero(Index n) { return SymMatrix(Matrix::Zero(n, n)); }

SymMatrix SymMatrix::identity(Index n) { return SymMatrix(Matrix::Identity(n, n)); }

SymMatrix SymMatrix::diagonal(std::span<const double> diag) {
  Matrix m = Matrix::Zero(static_cast<Index>(diag.size()), static_cast<Index>(diag.size()));
  for (std::size_t i = 0; i < diag.size(); ++i) {
    m(static_cast<Index>(i), static_cast<Index>(i)) = diag[i];
  }
  return SymMatrix(m);
}

SymMatrix SymMatrix::diagonal(std::initializer_list<double> diag) {
  return diagonal(std::span<const double>(diag.begin(), diag.size()));
}

SymMatrix SymMatrix::from_row_major(Index n, std::span<const double> values) {
  if (n <= 0 || values.size() != static_cast<std::size_t>(n * n)) {
    throw DimensionMismatch("expected " + std::to_string(n * n) + " entries, got " +
                            std::to_string(values.size()));
  }
  Matrix m(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      m(i, j) = values[static_cast<std::size_t>(i * n + j)];
    }
  }
  return SymMatrix(m);
}

double SymMatrix::max_abs() const noexcept { return m_.cwiseAbs().maxCoeff(); }

std::vector<double> SymMatrix::row_major() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(m_.size()));
  for (Index i = 0; i < m_.rows(); ++i) {
    for (Index j = 0; j < m_.cols(); ++j) out.push_back(m_(i, j));
  }
  return out;
}

namespace {

void require_same_dim(const SymMatrix& a, const SymMatrix& b) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("dimension " + std::to_string(a.dim()) + " vs " +
                            std::to_string(b.dim()));
  }
}

Eigen::LLT<Matrix> factor(const SymMatrix& m) {
  Eigen::LLT<Matrix> llt(m.matrix());
  if (llt.info() != Eigen::Success) {
    throw NotPositiveDefinite("Cholesky factorization met a non-positive pivot");
  }
  return llt;
}

}  // namespace

// Sums and differences of symmetric matrices are symmetric entry for entry,
// so they skip the symmetrizing constructor.
SymMatrix operator+(const SymMatrix& a, const SymMatrix& b) {
  require_same_dim(a, b);
  return SymMatrix(a.m_ + b.m_, SymMatrix::Trusted{});
}

SymMatrix operator-(const SymMatrix& a, const SymMatrix& b) {
  require_same_dim(a, b);
  return SymMatrix(a.m_ - b.m_, SymMatrix::Trusted{});
}

SymMatrix operator*(double s, const SymMatrix& a) {
  return SymMatrix(s * a.m_, SymMatrix::Trusted{});
}

SymMatrix operator/(const SymMatrix& a, double s) {
  return SymMatrix(a.m_ / s, SymMatrix::Trusted{});
}

double min_eigenvalue(const SymMatrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(m.matrix(), Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

bool is_psd(const SymMatrix& m, double tol) {
  return min_eigenvalue(m) >= -tol * (1.0 + m.max_abs());
}

double chol_logdet(const SymMatrix& m) {
  const auto llt = factor(m);
  const Matrix& l = llt.matrixLLT();
  double sum = 0.0;
  for (Index k = 0; k < l.rows(); ++k) sum += std::log(l(k, k));
  return 2.0 * sum;
}

Matrix spd_solve(const SymMatrix& m, const Matrix& b) {
  if (b.rows() != m.dim()) {
    throw DimensionMismatch("right-hand side has " + std::to_string(b.rows()) +
                            " rows, matrix has dimension " + std::to_string(m.dim()));
  }
  return factor(m).solve(b);
}

SymMatrix spd_inverse(const SymMatrix& m) {
  return SymMatrix(factor(m).solve(Matrix::Identity(m.dim(), m.dim())));
}

double trace_product(const SymMatrix& a, const SymMatrix& b) {
  require_same_dim(a, b);
  const Index n = a.dim();
  double sum = 0.0;
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) sum += a(i, j) * b(i, j);
  }
  return sum;
}

double trace_of_product(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) {
    throw DimensionMismatch("trace of a non-square product");
  }
  return a.cwiseProduct(b.transpose()).sum();
}

SymMatrix random_psd(Index n, Index rank, double scale, std::uint64_t seed) {
  if (n <= 0) throw InvalidRank("dimension must be positive");
  if (rank < 0 || rank > n) {
    throw InvalidRank("rank " + std::to_string(rank) + " outside 0.." + std::to_string(n));
  }
  if (rank == 0) return SymMatrix::zero(n);
  NormalStream normal(seed);
  Matrix g(n, rank);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < rank; ++j) g(i, j) = scale * normal.next();
  }
  return SymMatrix(g * g.transpose());
}

}  // namespace splitci
