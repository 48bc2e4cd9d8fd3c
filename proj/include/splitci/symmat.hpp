#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <vector>

namespace splitci {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Dense square symmetric matrix.
///
/// Construction symmetrizes the input as (M + M^T) / 2, so products such as
/// P^-1 D P^-1 that drift from symmetry in the last bits can be wrapped
/// directly. Values are immutable after construction.
class SymMatrix {
 public:
  /// Throws DimensionMismatch if `m` is empty or not square.
  explicit SymMatrix(const Matrix& m);

  static SymMatrix zero(Index n);
  static SymMatrix identity(Index n);
  static SymMatrix diagonal(std::span<const double> diag);
  static SymMatrix diagonal(std::initializer_list<double> diag);
  /// Throws DimensionMismatch unless `values.size() == n * n`.
  static SymMatrix from_row_major(Index n, std::span<const double> values);

  Index dim() const noexcept { return m_.rows(); }
  double operator()(Index i, Index j) const { return m_(i, j); }
  const Matrix& matrix() const noexcept { return m_; }

  /// Largest absolute entry.
  double max_abs() const noexcept;
  std::vector<double> row_major() const;

  friend SymMatrix operator+(const SymMatrix& a, const SymMatrix& b);
  friend SymMatrix operator-(const SymMatrix& a, const SymMatrix& b);
  friend SymMatrix operator*(double s, const SymMatrix& a);
  friend SymMatrix operator*(const SymMatrix& a, double s) { return s * a; }
  friend SymMatrix operator/(const SymMatrix& a, double s);

 private:
  struct Trusted {};
  SymMatrix(Matrix m, Trusted) : m_(std::move(m)) {}

  Matrix m_;
};

/// True iff the smallest eigenvalue of `m` is >= -tol * (1 + max|entry|).
bool is_psd(const SymMatrix& m, double tol);

double min_eigenvalue(const SymMatrix& m);

/// ln det(m) from the Cholesky factor. Throws NotPositiveDefinite.
double chol_logdet(const SymMatrix& m);

/// Solves m X = b via Cholesky. Throws NotPositiveDefinite or DimensionMismatch.
Matrix spd_solve(const SymMatrix& m, const Matrix& b);

/// Explicit inverse via Cholesky; for call sites that reuse the inverse.
SymMatrix spd_inverse(const SymMatrix& m);

/// tr{AB} for symmetric A, B, computed as sum_ij A_ij B_ij.
/// Symmetric in its arguments bit-for-bit.
double trace_product(const SymMatrix& a, const SymMatrix& b);

/// tr{AB} for general conforming A (n x k) and B (k x n).
double trace_of_product(const Matrix& a, const Matrix& b);

/// G G^T where G is n x rank with entries scale * N(0,1) drawn from
/// NormalStream(seed), filled row by row. Throws InvalidRank unless
/// 0 <= rank <= n.
SymMatrix random_psd(Index n, Index rank, double scale, std::uint64_t seed);

}  // namespace splitci
