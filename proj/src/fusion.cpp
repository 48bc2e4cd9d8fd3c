#include "splitci/fusion.hpp"

#include "splitci/errors.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <string>

namespace splitci {

namespace {

constexpr double kPartPsdTol = 1e-9;

// Zeroes eigenvalues in [-tol, 0). Returns the number clipped; leaves `m`
// untouched when there is nothing to clip.
int clip_negative(SymMatrix& m, double tol, const char* name) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(m.matrix());
  Vector values = eig.eigenvalues();
  int clipped = 0;
  for (Index k = 0; k < values.size(); ++k) {
    if (values(k) < 0.0) {
      if (values(k) < -tol) {
        throw NotPsd(std::string("fused ") + name + " has eigenvalue " +
                     std::to_string(values(k)));
      }
      values(k) = 0.0;
      ++clipped;
    }
  }
  if (clipped > 0) {
    m = SymMatrix(eig.eigenvectors() * values.asDiagonal() * eig.eigenvectors().transpose());
  }
  return clipped;
}

}  // namespace

void validate(const SplitEstimate& e) {
  const Index n = e.x.size();
  if (n == 0) throw InvalidSplitPair("x", "empty state vector");
  if (e.cov_d.dim() != n) throw InvalidSplitPair("cov_d", "dimension does not match x");
  if (e.cov_i.dim() != n) throw InvalidSplitPair("cov_i", "dimension does not match x");
  if (!is_psd(e.cov_d, kPartPsdTol)) throw InvalidSplitPair("cov_d", "not positive semidefinite");
  if (!is_psd(e.cov_i, kPartPsdTol)) throw InvalidSplitPair("cov_i", "not positive semidefinite");
  Eigen::LLT<Matrix> llt((e.cov_d + e.cov_i).matrix());
  if (llt.info() != Eigen::Success) {
    throw InvalidSplitPair("cov_d+cov_i", "not positive definite");
  }
}

FusionResult fuse_at(const SplitEstimate& e1, const SplitEstimate& e2, double w) {
  if (e1.x.size() != e2.x.size()) {
    throw DimensionMismatch("estimates of dimension " + std::to_string(e1.x.size()) + " and " +
                            std::to_string(e2.x.size()));
  }
  validate(e1);
  validate(e2);
  if (!(w > 0.0 && w < 1.0)) throw InvalidArgument("w must lie in the open interval (0, 1)");

  const SymMatrix d1 = e1.cov_d / w;
  const SymMatrix d2 = e2.cov_d / (1.0 - w);
  const SymMatrix p1 = d1 + e1.cov_i;
  const SymMatrix p2 = d2 + e2.cov_i;
  const SymMatrix p(p1.matrix() * spd_solve(p1 + p2, p2.matrix()));

  const Matrix p1_inv_d1 = spd_solve(p1, d1.matrix());
  const Matrix p2_inv_d2 = spd_solve(p2, d2.matrix());
  // P1^-1 D1 P1^-1 = P1^-1 (P1^-1 D1)^T
  const Matrix inner = spd_solve(p1, p1_inv_d1.transpose()) + spd_solve(p2, p2_inv_d2.transpose());

  const Vector info = spd_solve(p1, e1.x) + spd_solve(p2, e2.x);
  Vector x = p.matrix() * info;

  const double tol = kPartPsdTol * (1.0 + p.max_abs());
  SymMatrix cov_d(p.matrix() * inner * p.matrix());
  int clipped = clip_negative(cov_d, tol, "cov_d");
  SymMatrix cov_i = p - cov_d;
  const int clipped_i = clip_negative(cov_i, tol, "cov_i");
  if (clipped_i > 0) cov_d = p - cov_i;
  clipped += clipped_i;
  SymMatrix p_split = cov_d + cov_i;

  return FusionResult{
      .fused = {std::move(x), std::move(cov_d), std::move(cov_i)},
      .p = std::move(p_split),
      .w = w,
      .optimize = {},
      .clipped_eigenvalues = clipped,
  };
}

FusionResult split_ci_fuse(const SplitEstimate& e1, const SplitEstimate& e2,
                           const OptimizeOptions& opts) {
  if (e1.x.size() != e2.x.size()) {
    throw DimensionMismatch("estimates of dimension " + std::to_string(e1.x.size()) + " and " +
                            std::to_string(e2.x.size()));
  }
  validate(e1);
  validate(e2);
  const SplitPair pair(e1.cov_d, e1.cov_i, e2.cov_d, e2.cov_i);
  const OptimizeResult opt = minimize_w(pair, opts);
  FusionResult out = fuse_at(e1, e2, opt.w_star);
  out.optimize = opt;
  return out;
}

}  // namespace splitci
