#pragma once

#include "splitci/symmat.hpp"

#include <functional>
#include <span>

namespace splitci {

// Numerical checks of the matrix-calculus and trace-inequality steps behind
// the convexity of ln det P(w). Each returns a residual (or a signed value
// whose sign is the claim) so property tests can bound it.

using MatrixFamily = std::function<SymMatrix(double)>;

/// |central-difference d/dw ln det F(w) - tr{F(w)^-1 F'(w)}| with step h.
double jacobi_residual(const MatrixFamily& family, const MatrixFamily& derivative, double w,
                       double h);

/// tr{M1 M2} for PSD M1, M2 (checked with tolerance 1e-9, NotPsd otherwise).
/// Nonnegative up to rounding.
double lemma4_trace(const SymMatrix& m1, const SymMatrix& m2);

struct Lemma5Result {
  /// lhs - rhs of the trace inequality; nonnegative up to rounding.
  double gap;
  /// |gap - 2 tr{(Z - Z X^-1 Z)(X^-1 - Y^-1)}|.
  double identity_residual;
  /// 1 + sum of magnitudes of the individual trace terms; the rounding scale
  /// against which gap and identity_residual are judged.
  double scale;
};

/// For 0 < X <= Y and 0 <= Z <= X (Loewner order, each checked with
/// tolerance 1e-9), evaluates
///   tr{2 X^-1 Z - 2 Y^-1 Z - X^-1 Z X^-1 Z + Y^-1 Z Y^-1 Z}
///     - tr{(X^-1 - Y^-1) Z (X^-1 - Y^-1) Z}
/// Throws PreconditionViolated naming the ordering that failed.
Lemma5Result lemma5_gap(const SymMatrix& x, const SymMatrix& y, const SymMatrix& z);

struct P3IdentityResiduals {
  double r1;  // ||P3^-1 - P2^-1 B3^-1 P1^-1||_inf
  double r2;  // ||P1^-1 - P3^-1 - P1^-1 B3^-1 P1^-1||_inf
  double r3;  // ||P2^-1 - P3^-1 - P2^-1 B3^-1 P2^-1||_inf
};

/// Residuals of the inverse identities relating P3 = P1 + P2 and
/// B3 = P1^-1 + P2^-1. Norms are max-row-sum.
P3IdentityResiduals p3_identity_residuals(const SymMatrix& p1, const SymMatrix& p2);

/// max over cyclic rotations of |tr{rotated product} - tr{product}|.
/// Throws DimensionMismatch unless the chain has length >= 2 and multiplies
/// out to a square matrix.
double cyclic_trace_residual(std::span<const Matrix> chain);

}  // namespace splitci
