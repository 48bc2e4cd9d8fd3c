#pragma once

#include "splitci/objective.hpp"

#include <functional>
#include <string_view>

namespace splitci {

struct OptimizeOptions {
  /// Search interval is [delta, 1 - delta].
  double delta = 1e-6;
  /// Bisection stops once the bracket is at most this wide.
  double w_tol = 1e-10;
  /// Objective variation below which the problem is reported as flat.
  double flat_tol = 1e-12;
  int max_iter = 200;
  /// Called with the bracket (a, b) after every bisection step.
  std::function<void(double a, double b)> on_bracket;
};

enum class Status { Interior, LowerBoundary, UpperBoundary, Flat };

/// "interior", "lower_boundary", "upper_boundary", "flat".
std::string_view to_string(Status s) noexcept;

struct OptimizeResult {
  double w_star;
  double objective_logdet;
  double objective_det;
  Status status;
  int iterations;
  double d1_at_solution;
  /// max(|d1(a)|, |d1(b)|) over the final bracket; the derivative tolerance
  /// reached. Zero for fast paths.
  double d1_bound;
};

/// argmin over [delta, 1 - delta] of ln det P(w), which has the same
/// minimizer as det P(w).
///
/// Zero dependent parts short-circuit (both zero: Flat at 0.5; P1d zero:
/// LowerBoundary; P2d zero: UpperBoundary). An objective whose variation
/// over an 11-point probe grid is within flat_tol is also Flat at 0.5.
/// Otherwise the derivative is checked at both ends of the interval and, if
/// it changes sign, bisected on its sign: ln det P(w) is convex, so the
/// derivative is nondecreasing.
///
/// Throws InvalidArgument for bad options, NotPositiveDefinite for a bad
/// pair and MaxIterExceeded when w_tol cannot be reached in max_iter steps.
OptimizeResult minimize_w(const SplitPair& pair, const OptimizeOptions& opts = {});

struct GridScanResult {
  double w_best;
  double objective;
};

/// Brute-force argmin of ln det P(w) over `samples` equally spaced points of
/// [delta, 1 - delta]. Points are placed symmetrically about 0.5, so an odd
/// sample count contains 0.5 exactly. Ties keep the first point.
GridScanResult grid_scan(const SplitPair& pair, int samples, double delta);

/// Grid point k of the scan above.
double grid_point(int k, int samples, double delta) noexcept;

}  // namespace splitci
