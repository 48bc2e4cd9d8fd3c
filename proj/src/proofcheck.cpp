#include "splitci/proofcheck.hpp"

#include "splitci/errors.hpp"

#include <cmath>

namespace splitci {

namespace {

constexpr double kPreconditionTol = 1e-9;

double inf_norm(const Matrix& m) { return m.cwiseAbs().rowwise().sum().maxCoeff(); }

void require_order(const SymMatrix& lower, const SymMatrix& upper, const char* ordering) {
  if (!is_psd(upper - lower, kPreconditionTol)) {
    throw PreconditionViolated(std::string("Loewner ordering violated: ") + ordering);
  }
}

}  // namespace

double jacobi_residual(const MatrixFamily& family, const MatrixFamily& derivative, double w,
                       double h) {
  if (!(h > 0.0)) throw InvalidArgument("finite-difference step must be positive");
  const double fd = (chol_logdet(family(w + h)) - chol_logdet(family(w - h))) / (2.0 * h);
  const SymMatrix f = family(w);
  const double analytic = trace_of_product(spd_solve(f, Matrix::Identity(f.dim(), f.dim())),
                                           derivative(w).matrix());
  return std::abs(fd - analytic);
}

double lemma4_trace(const SymMatrix& m1, const SymMatrix& m2) {
  if (!is_psd(m1, kPreconditionTol)) throw NotPsd("first argument is not PSD");
  if (!is_psd(m2, kPreconditionTol)) throw NotPsd("second argument is not PSD");
  return trace_product(m1, m2);
}

Lemma5Result lemma5_gap(const SymMatrix& x, const SymMatrix& y, const SymMatrix& z) {
  if (x.dim() != y.dim() || x.dim() != z.dim()) {
    throw DimensionMismatch("X, Y, Z must share a dimension");
  }
  if (min_eigenvalue(x) <= 0.0) throw PreconditionViolated("Loewner ordering violated: 0 < X");
  require_order(x, y, "X <= Y");
  require_order(SymMatrix::zero(z.dim()), z, "0 <= Z");
  require_order(z, x, "Z <= X");

  const Matrix x_inv = spd_inverse(x).matrix();
  const Matrix y_inv = spd_inverse(y).matrix();
  const Matrix& zm = z.matrix();

  const Matrix xz = x_inv * zm;
  const Matrix yz = y_inv * zm;
  const Matrix diff = x_inv - y_inv;
  const Matrix dz = diff * zm;

  const double a = 2.0 * xz.trace();
  const double b = 2.0 * yz.trace();
  const double c = trace_of_product(xz, xz);
  const double d = trace_of_product(yz, yz);
  const double rhs = trace_of_product(dz, dz);
  const double gap = (a - b - c + d) - rhs;

  // Closed form 2 tr{Z (Z^-1 - X^-1) Z (X^-1 - Y^-1)}, arranged as
  // Z - Z X^-1 Z so it stays defined for singular Z.
  const Matrix inner = zm - zm * x_inv * zm;
  const double closed = 2.0 * trace_of_product(inner, diff);

  return {gap, std::abs(gap - closed),
          1.0 + std::abs(a) + std::abs(b) + std::abs(c) + std::abs(d) + std::abs(rhs)};
}

P3IdentityResiduals p3_identity_residuals(const SymMatrix& p1, const SymMatrix& p2) {
  const Matrix p1_inv = spd_inverse(p1).matrix();
  const Matrix p2_inv = spd_inverse(p2).matrix();
  const Matrix p3_inv = spd_inverse(p1 + p2).matrix();
  const SymMatrix b3(p1_inv + p2_inv);
  const Matrix b3_inv = spd_inverse(b3).matrix();
  return {
      inf_norm(p3_inv - p2_inv * b3_inv * p1_inv),
      inf_norm(p1_inv - p3_inv - p1_inv * b3_inv * p1_inv),
      inf_norm(p2_inv - p3_inv - p2_inv * b3_inv * p2_inv),
  };
}

double cyclic_trace_residual(std::span<const Matrix> chain) {
  if (chain.size() < 2) throw DimensionMismatch("trace chain needs at least two factors");
  for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
    if (chain[k].cols() != chain[k + 1].rows()) {
      throw DimensionMismatch("trace chain factors " + std::to_string(k) + " and " +
                              std::to_string(k + 1) + " do not conform");
    }
  }
  if (chain.back().cols() != chain.front().rows()) {
    throw DimensionMismatch("trace chain does not multiply to a square matrix");
  }

  const std::size_t len = chain.size();
  auto rotated_trace = [&](std::size_t start) {
    Matrix prod = chain[start];
    for (std::size_t k = 1; k < len; ++k) prod = prod * chain[(start + k) % len];
    return prod.trace();
  };

  const double reference = rotated_trace(0);
  double worst = 0.0;
  for (std::size_t s = 1; s < len; ++s) {
    worst = std::max(worst, std::abs(rotated_trace(s) - reference));
  }
  return worst;
}

}  // namespace splitci
