#pragma once

#include "splitci/optimizer.hpp"

namespace splitci {

/// Mean with a split covariance cov_d + cov_i, where cov_d bounds error that
/// may be correlated with other estimates and cov_i is known independent.
struct SplitEstimate {
  Vector x;
  SymMatrix cov_d;
  SymMatrix cov_i;
};

/// Throws InvalidSplitPair (field "x", "cov_d", "cov_i" or "cov_d+cov_i")
/// unless both parts are PSD, their sum is PD and the sizes agree.
void validate(const SplitEstimate& e);

struct FusionResult {
  SplitEstimate fused;
  /// Exactly fused.cov_d + fused.cov_i; equals (P1^-1 + P2^-1)^-1 up to
  /// rounding.
  SymMatrix p;
  double w;
  OptimizeResult optimize;
  /// Negative eigenvalues (within tolerance) zeroed in the output parts.
  int clipped_eigenvalues;
};

/// Fuses two split estimates at a given w in (0, 1):
///   P1 = cov_d1 / w + cov_i1, P2 = cov_d2 / (1-w) + cov_i2
///   P  = (P1^-1 + P2^-1)^-1
///   x  = P (P1^-1 x1 + P2^-1 x2)
///   cov_d = P (P1^-1 (cov_d1 / w) P1^-1 + P2^-1 (cov_d2 / (1-w)) P2^-1) P
///   cov_i = P - cov_d
/// Eigenvalues of cov_d or cov_i in [-1e-9 (1 + max|P|), 0) are clipped
/// to zero; anything more negative throws NotPsd.
/// The `optimize` member of the result is left default-initialized.
FusionResult fuse_at(const SplitEstimate& e1, const SplitEstimate& e2, double w);

/// fuse_at with w chosen by minimize_w on (cov_d1, cov_i1, cov_d2, cov_i2).
/// Throws DimensionMismatch for estimates of different sizes.
FusionResult split_ci_fuse(const SplitEstimate& e1, const SplitEstimate& e2,
                           const OptimizeOptions& opts = {});

}  // namespace splitci
