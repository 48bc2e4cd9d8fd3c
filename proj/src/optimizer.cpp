#include "splitci/optimizer.hpp"

#include "splitci/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <string>

namespace splitci {

namespace {

constexpr double kZeroMatrixRel = 1e-14;
constexpr int kFlatProbes = 11;

void check_options(const OptimizeOptions& opts) {
  if (!(opts.delta > 0.0 && opts.delta < 0.5)) {
    throw InvalidArgument("delta must lie in (0, 0.5)");
  }
  if (!(opts.w_tol > 0.0)) throw InvalidArgument("w_tol must be positive");
  if (!(opts.flat_tol >= 0.0)) throw InvalidArgument("flat_tol must be nonnegative");
  if (opts.max_iter < 1) throw InvalidArgument("max_iter must be at least 1");
}

OptimizeResult finish(const SplitPair& pair, double w, Status status, int iterations,
                      double d1_bound) {
  const double logdet = logdet_objective(pair, w);
  return {w, logdet, std::exp(logdet), status, iterations, d1_logdet(pair, w), d1_bound};
}

}  // namespace

std::string_view to_string(Status s) noexcept {
  switch (s) {
    case Status::Interior: return "interior";
    case Status::LowerBoundary: return "lower_boundary";
    case Status::UpperBoundary: return "upper_boundary";
    case Status::Flat: return "flat";
  }
  return "unknown";
}

double grid_point(int k, int samples, double delta) noexcept {
  const double step = (1.0 - 2.0 * delta) / static_cast<double>(samples - 1);
  return 0.5 + (static_cast<double>(k) - 0.5 * static_cast<double>(samples - 1)) * step;
}

GridScanResult grid_scan(const SplitPair& pair, int samples, double delta) {
  if (samples < 3) throw InvalidArgument("grid scan needs at least 3 samples");
  if (!(delta > 0.0 && delta < 0.5)) throw InvalidArgument("delta must lie in (0, 0.5)");
  GridScanResult best{grid_point(0, samples, delta), 0.0};
  best.objective = logdet_objective(pair, best.w_best);
  for (int k = 1; k < samples; ++k) {
    const double w = grid_point(k, samples, delta);
    const double f = logdet_objective(pair, w);
    if (f < best.objective) best = {w, f};
  }
  return best;
}

OptimizeResult minimize_w(const SplitPair& pair, const OptimizeOptions& opts) {
  check_options(opts);
  const double lo = opts.delta;
  const double hi = 1.0 - opts.delta;

  const double zero_threshold = kZeroMatrixRel * pair.scale();
  const bool p1d_zero = pair.p1d().max_abs() <= zero_threshold;
  const bool p2d_zero = pair.p2d().max_abs() <= zero_threshold;
  if (p1d_zero && p2d_zero) return finish(pair, 0.5, Status::Flat, 0, 0.0);
  if (p1d_zero) return finish(pair, lo, Status::LowerBoundary, 0, 0.0);
  if (p2d_zero) return finish(pair, hi, Status::UpperBoundary, 0, 0.0);

  double f_min = logdet_objective(pair, lo);
  double f_max = f_min;
  for (int k = 1; k < kFlatProbes; ++k) {
    const double f = logdet_objective(pair, grid_point(k, kFlatProbes, opts.delta));
    f_min = std::min(f_min, f);
    f_max = std::max(f_max, f);
  }
  if (f_max - f_min <= opts.flat_tol) return finish(pair, 0.5, Status::Flat, 0, 0.0);

  double ga = d1_logdet(pair, lo);
  if (ga >= 0.0) return finish(pair, lo, Status::LowerBoundary, 0, 0.0);
  double gb = d1_logdet(pair, hi);
  if (gb <= 0.0) return finish(pair, hi, Status::UpperBoundary, 0, 0.0);

  double a = lo;
  double b = hi;
  int iterations = 0;
  while (b - a > opts.w_tol) {
    if (iterations >= opts.max_iter) {
      throw MaxIterExceeded(fmt::format("bisection did not reach w_tol={:g} within {} iterations",
                                        opts.w_tol, opts.max_iter));
    }
    ++iterations;
    const double m = 0.5 * (a + b);
    const double g = d1_logdet(pair, m);
    if (g > 0.0) {
      b = m;
      gb = g;
    } else if (g < 0.0) {
      a = m;
      ga = g;
    } else {
      a = b = m;
      ga = gb = 0.0;
    }
    if (opts.on_bracket) opts.on_bracket(a, b);
  }
  return finish(pair, 0.5 * (a + b), Status::Interior, iterations,
                std::max(std::abs(ga), std::abs(gb)));
}

}  // namespace splitci
