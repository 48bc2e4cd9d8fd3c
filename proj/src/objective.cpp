#include "splitci/objective.hpp"

#include "splitci/errors.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <string>

namespace splitci {

namespace {

constexpr double kMemberPsdTol = 1e-9;

void check_member(const SymMatrix& m, const char* name, Index n) {
  if (m.dim() != n) {
    throw InvalidSplitPair(name, "dimension " + std::to_string(m.dim()) + ", expected " +
                                     std::to_string(n));
  }
  if (!is_psd(m, kMemberPsdTol)) {
    throw InvalidSplitPair(name, "not positive semidefinite");
  }
}

void check_definite(const SymMatrix& m, const char* name) {
  Eigen::LLT<Matrix> llt(m.matrix());
  if (llt.info() != Eigen::Success) {
    throw InvalidSplitPair(name, "not positive definite");
  }
}

void check_w(double w) {
  if (!(w > 0.0 && w < 1.0)) {
    throw InvalidArgument("w must lie in the open interval (0, 1), got " + std::to_string(w));
  }
}

// ln det of a matrix expression, no SymMatrix round trip.
double logdet(const Matrix& m) {
  Eigen::LLT<Matrix> llt(m);
  if (llt.info() != Eigen::Success) {
    throw NotPositiveDefinite("Cholesky factorization met a non-positive pivot");
  }
  const Matrix& l = llt.matrixLLT();
  double sum = 0.0;
  for (Index k = 0; k < l.rows(); ++k) sum += std::log(l(k, k));
  return 2.0 * sum;
}

// Shared intermediates at one w. P1, P2 and P3 are each inverted once and
// the inverses reused by every trace term.
struct Terms {
  double w;
  SymMatrix d1, d2;   // P1d / w, P2d / (1-w)
  SymMatrix p1, p2, p3;
  SymMatrix p1_inv, p2_inv, p3_inv;

  Terms(const SplitPair& pair, double w_)
      : w(w_),
        d1(pair.p1d() / w_),
        d2(pair.p2d() / (1.0 - w_)),
        p1(d1 + pair.p1i()),
        p2(d2 + pair.p2i()),
        p3(p1 + p2),
        p1_inv(spd_inverse(p1)),
        p2_inv(spd_inverse(p2)),
        p3_inv(spd_inverse(p3)) {}
};

// tr{-M^-1 M' M^-1 M' + M^-1 M''}
double d2_logdet_term(const Matrix& m_inv, const Matrix& dm, const Matrix& d2m) {
  const Matrix a = m_inv * dm;
  return -trace_of_product(a, a) + trace_of_product(m_inv, d2m);
}

double d1_from(const Terms& t) {
  const double w = t.w;
  const Matrix dp1 = -t.d1.matrix() / w;
  const Matrix dp2 = t.d2.matrix() / (1.0 - w);
  return trace_of_product(t.p1_inv.matrix(), dp1) + trace_of_product(t.p2_inv.matrix(), dp2) -
         trace_of_product(t.p3_inv.matrix(), dp1 + dp2);
}

double d2_direct_from(const Terms& t) {
  const double w = t.w;
  const double v = 1.0 - w;
  const Matrix dp1 = -t.d1.matrix() / w;
  const Matrix dp2 = t.d2.matrix() / v;
  const Matrix d2p1 = 2.0 * t.d1.matrix() / (w * w);
  const Matrix d2p2 = 2.0 * t.d2.matrix() / (v * v);
  return d2_logdet_term(t.p1_inv.matrix(), dp1, d2p1) +
         d2_logdet_term(t.p2_inv.matrix(), dp2, d2p2) -
         d2_logdet_term(t.p3_inv.matrix(), dp1 + dp2, d2p1 + d2p2);
}

// tr{2 Pk^-1 Dk - 2 P3^-1 Dk - Pk^-1 Dk Pk^-1 Dk + P3^-1 Dk P3^-1 Dk}
double t_term(const Matrix& pk_inv, const Matrix& p3_inv, const Matrix& dk) {
  const Matrix a = pk_inv * dk;
  const Matrix b = p3_inv * dk;
  return 2.0 * a.trace() - 2.0 * b.trace() - trace_of_product(a, a) + trace_of_product(b, b);
}

DecomposedSecondDerivative decomposed_from(const Terms& t) {
  const double w = t.w;
  const double v = 1.0 - w;
  DecomposedSecondDerivative out{};
  out.t1 = t_term(t.p1_inv.matrix(), t.p3_inv.matrix(), t.d1.matrix());
  out.t2 = t_term(t.p2_inv.matrix(), t.p3_inv.matrix(), t.d2.matrix());
  out.t3 = trace_of_product(t.p3_inv.matrix() * t.d1.matrix(), t.p3_inv.matrix() * t.d2.matrix());
  out.d2 = out.t1 / (w * w) + out.t2 / (v * v) - 2.0 * out.t3 / (w * v);
  return out;
}

struct BoundParts {
  SymMatrix b3;
  SymMatrix c;
  double value;
};

BoundParts lower_bound_from(const Terms& t) {
  const double w = t.w;
  const SymMatrix b3 = t.p1_inv + t.p2_inv;
  const SymMatrix c(t.p1_inv.matrix() * (t.d1.matrix() / w) * t.p1_inv.matrix() -
                    t.p2_inv.matrix() * (t.d2.matrix() / (1.0 - w)) * t.p2_inv.matrix());
  const Matrix b3_inv_c = spd_solve(b3, c.matrix());
  return {b3, c, trace_of_product(b3_inv_c, b3_inv_c)};
}

}  // namespace

SplitPair::SplitPair(SymMatrix p1d, SymMatrix p1i, SymMatrix p2d, SymMatrix p2i)
    : p1d_(std::move(p1d)), p1i_(std::move(p1i)), p2d_(std::move(p2d)), p2i_(std::move(p2i)) {
  const Index n = p1d_.dim();
  check_member(p1d_, "P1d", n);
  check_member(p1i_, "P1i", n);
  check_member(p2d_, "P2d", n);
  check_member(p2i_, "P2i", n);
  check_definite(p1d_ + p1i_, "P1d+P1i");
  check_definite(p2d_ + p2i_, "P2d+P2i");
}

SplitPair SplitPair::swapped() const { return SplitPair(p2d_, p2i_, p1d_, p1i_); }

SplitPair SplitPair::scaled(double c) const {
  return SplitPair(c * p1d_, c * p1i_, c * p2d_, c * p2i_);
}

double SplitPair::scale() const noexcept {
  return std::max({p1d_.max_abs(), p1i_.max_abs(), p2d_.max_abs(), p2i_.max_abs()});
}

FamilyValues eval_family(const SplitPair& pair, double w) {
  check_w(w);
  SymMatrix p1 = pair.p1d() / w + pair.p1i();
  SymMatrix p2 = pair.p2d() / (1.0 - w) + pair.p2i();
  // Surface a bad member before the sum masks it.
  chol_logdet(p1);
  chol_logdet(p2);
  SymMatrix p(p1.matrix() * spd_solve(p1 + p2, p2.matrix()));
  return {std::move(p1), std::move(p2), std::move(p)};
}

double logdet_objective(const SplitPair& pair, double w) {
  check_w(w);
  const Matrix p1 = pair.p1d().matrix() / w + pair.p1i().matrix();
  const Matrix p2 = pair.p2d().matrix() / (1.0 - w) + pair.p2i().matrix();
  return logdet(p1) + logdet(p2) - logdet(p1 + p2);
}

double d1_logdet(const SplitPair& pair, double w) {
  check_w(w);
  return d1_from(Terms(pair, w));
}

double d2_logdet_direct(const SplitPair& pair, double w) {
  check_w(w);
  return d2_direct_from(Terms(pair, w));
}

DecomposedSecondDerivative d2_logdet_decomposed(const SplitPair& pair, double w) {
  check_w(w);
  return decomposed_from(Terms(pair, w));
}

double convexity_lower_bound(const SplitPair& pair, double w) {
  check_w(w);
  return lower_bound_from(Terms(pair, w)).value;
}

WEvaluation evaluate(const SplitPair& pair, double w) {
  check_w(w);
  const Terms t(pair, w);
  const auto dec = decomposed_from(t);
  auto bound = lower_bound_from(t);
  SymMatrix p(t.p1.matrix() * spd_solve(t.p3, t.p2.matrix()));
  const double logdet_p = chol_logdet(t.p1) + chol_logdet(t.p2) - chol_logdet(t.p3);
  return WEvaluation{
      .w = w,
      .p1 = t.p1,
      .p2 = t.p2,
      .p = std::move(p),
      .p3 = t.p3,
      .det_p = std::exp(logdet_p),
      .logdet_p = logdet_p,
      .d1 = d1_from(t),
      .d2_direct = d2_direct_from(t),
      .d2_decomposed = dec.d2,
      .t1 = dec.t1,
      .t2 = dec.t2,
      .t3 = dec.t3,
      .lower_bound = bound.value,
      .b3 = std::move(bound.b3),
      .c = std::move(bound.c),
      .d1_mat = t.d1,
      .d2_mat = t.d2,
  };
}

}  // namespace splitci
