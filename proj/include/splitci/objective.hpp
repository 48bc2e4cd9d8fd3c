#pragma once

#include "splitci/symmat.hpp"

namespace splitci {

/// The quadruple (P1d, P1i, P2d, P2i) defining the w-parameterized family
///
///   P1(w) = P1d / w + P1i
///   P2(w) = P2d / (1 - w) + P2i
///   P(w)  = (P1(w)^-1 + P2(w)^-1)^-1
///
/// Construction checks that all four members are PSD (tolerance 1e-9) and
/// that P1d + P1i and P2d + P2i are positive definite. Since P1d / w >= P1d
/// for w in (0, 1], the latter makes P1(w) and P2(w) positive definite on the
/// whole open interval. Failures throw InvalidSplitPair naming the member.
class SplitPair {
 public:
  SplitPair(SymMatrix p1d, SymMatrix p1i, SymMatrix p2d, SymMatrix p2i);

  Index dim() const noexcept { return p1d_.dim(); }
  const SymMatrix& p1d() const noexcept { return p1d_; }
  const SymMatrix& p1i() const noexcept { return p1i_; }
  const SymMatrix& p2d() const noexcept { return p2d_; }
  const SymMatrix& p2i() const noexcept { return p2i_; }

  /// (P2d, P2i, P1d, P1i); the objective of the result at 1 - w equals
  /// the objective of this pair at w.
  SplitPair swapped() const;
  SplitPair scaled(double c) const;

  /// Largest absolute entry over the four members.
  double scale() const noexcept;

 private:
  SymMatrix p1d_, p1i_, p2d_, p2i_;
};

struct FamilyValues {
  SymMatrix p1;
  SymMatrix p2;
  SymMatrix p;
};

/// P1(w), P2(w) and P(w). P is assembled as P1 (P1 + P2)^-1 P2 and
/// symmetrized. Throws InvalidArgument unless 0 < w < 1.
FamilyValues eval_family(const SplitPair& pair, double w);

/// ln det P(w) = ln det P1 + ln det P2 - ln det(P1 + P2).
double logdet_objective(const SplitPair& pair, double w);

/// d/dw ln det P(w).
double d1_logdet(const SplitPair& pair, double w);

/// d^2/dw^2 ln det P(w) as the three-term trace expression obtained from
/// the second-derivative formula for ln det applied to P1, P2 and P1 + P2.
double d2_logdet_direct(const SplitPair& pair, double w);

struct DecomposedSecondDerivative {
  double d2;
  double t1;
  double t2;
  double t3;
};

/// Second derivative regrouped by powers of w:
///   d2 = T1 / w^2 + T2 / (1-w)^2 - 2 T3 / (w (1-w))
/// with D1 = P1d / w, D2 = P2d / (1-w), P3 = P1 + P2 and
///   T1 = tr{2 P1^-1 D1 - 2 P3^-1 D1 - P1^-1 D1 P1^-1 D1 + P3^-1 D1 P3^-1 D1}
///   T2 = same with index 2
///   T3 = tr{P3^-1 D1 P3^-1 D2}
DecomposedSecondDerivative d2_logdet_decomposed(const SplitPair& pair, double w);

/// tr{B3^-1 C B3^-1 C} with B3 = P1^-1 + P2^-1 and
/// C = P1^-1 (D1 / w) P1^-1 - P2^-1 (D2 / (1-w)) P2^-1.
/// A nonnegative lower bound on the second derivative of ln det P(w).
double convexity_lower_bound(const SplitPair& pair, double w);

/// Every quantity above at one w.
struct WEvaluation {
  double w;
  SymMatrix p1, p2, p, p3;
  double det_p;
  double logdet_p;
  double d1;
  double d2_direct;
  double d2_decomposed;
  double t1, t2, t3;
  double lower_bound;
  SymMatrix b3, c, d1_mat, d2_mat;
};

WEvaluation evaluate(const SplitPair& pair, double w);

}  // namespace splitci
