#include "splitci/verify.hpp"

#include "splitci/corpus.hpp"
#include "splitci/errors.hpp"
#include "splitci/objective.hpp"
#include "splitci/optimizer.hpp"
#include "splitci/proofcheck.hpp"
#include "splitci/random.hpp"
#include "splitci/scenario.hpp"

#include <Eigen/Eigenvalues>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

namespace splitci {

namespace {

constexpr int kWSamples = 21;
constexpr int kGridSamples = 100001;

double sample_w(int j) { return 0.01 + 0.049 * static_cast<double>(j); }

double condition_number(const SymMatrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(m.matrix(), Eigen::EigenvaluesOnly);
  return eig.eigenvalues().maxCoeff() / eig.eigenvalues().minCoeff();
}

class Tally {
 public:
  Tally(std::string name, double tolerance) {
    s_.name = std::move(name);
    s_.tolerance = tolerance;
  }

  // One trial; a trial passes iff its worst residual is within tolerance.
  void record(double residual) {
    ++s_.trials;
    if (residual <= s_.tolerance) {
      ++s_.passed;
    } else {
      ++s_.failed;
    }
    s_.worst_residual = std::max(s_.worst_residual, residual);
  }

  const CheckSummary& summary() const { return s_; }

 private:
  CheckSummary s_;
};

enum Stream : std::uint64_t {
  kCyclic = 1,
  kLemma4,
  kLemma5,
  kP3,
  kPair,
};

std::uint64_t trial_seed(std::uint64_t seed, int trial, Stream stream) {
  return derive_seed(derive_seed(seed, static_cast<std::uint64_t>(trial)), stream);
}

}  // namespace

VerifyReport run_verify(std::uint64_t seed, int trials, std::span<const int> dims) {
  if (trials < 1) throw InvalidArgument("trials must be at least 1");
  if (dims.empty()) throw InvalidArgument("dims must not be empty");
  for (int d : dims) {
    if (d < 1) throw InvalidArgument("dims must be positive");
  }

  Tally cyclic("lemma3_cyclic_trace", 1e-10);
  Tally lemma4("lemma4_trace_nonnegative", 1e-10);
  Tally lemma5_gap_check("lemma5_gap_nonnegative", 1e-9);
  Tally lemma5_identity("lemma5_identity", 1e-9);
  Tally p3("p3_inverse_identities", 1e-9);
  Tally jacobi("jacobi_formula", 1e-6);
  Tally det_convex("det_convexity", 1e-6);
  Tally chain("logdet_chain_bound", 1e-7);
  Tally bound_sign("lower_bound_nonnegative", 1e-9);
  Tally equivalence("second_derivative_equivalence", 1e-8);
  Tally first_fd("first_derivative_fd", 1e-5);
  Tally optimizer("optimizer_vs_grid", 1.0);

  for (int t = 0; t < trials; ++t) {
    const Index n = dims[static_cast<std::size_t>(t) % dims.size()];

    {
      const auto s = trial_seed(seed, t, kCyclic);
      const std::array<Matrix, 3> chain{random_matrix(n, n, derive_seed(s, 0)),
                                        random_matrix(n, n, derive_seed(s, 1)),
                                        random_matrix(n, n, derive_seed(s, 2))};
      const double scale = 1.0 + chain[0].norm() * chain[1].norm() * chain[2].norm();
      cyclic.record(cyclic_trace_residual(chain) / scale);
    }
    {
      const auto s = trial_seed(seed, t, kLemma4);
      SplitMix64 choices(derive_seed(s, 0));
      const auto r1 = static_cast<Index>(choices.next() % static_cast<std::uint64_t>(n + 1));
      const auto r2 = static_cast<Index>(choices.next() % static_cast<std::uint64_t>(n + 1));
      const SymMatrix m1 = random_psd(n, r1, 1.0, derive_seed(s, 1));
      const SymMatrix m2 = random_psd(n, r2, 1.0, derive_seed(s, 2));
      const double scale = 1.0 + m1.matrix().norm() * m2.matrix().norm();
      lemma4.record(std::max(0.0, -lemma4_trace(m1, m2)) / scale);
    }
    {
      const auto triple = random_admissible_triple(n, trial_seed(seed, t, kLemma5));
      const auto r = lemma5_gap(triple.x, triple.y, triple.z);
      lemma5_gap_check.record(std::max(0.0, -r.gap) / r.scale);
      lemma5_identity.record(r.identity_residual / r.scale);
    }
    {
      const auto s = trial_seed(seed, t, kP3);
      const SymMatrix a = random_pd(n, derive_seed(s, 0));
      const SymMatrix b = random_pd(n, derive_seed(s, 1));
      const auto r = p3_identity_residuals(a, b);
      auto inf_norm = [](const SymMatrix& m) {
        return m.matrix().cwiseAbs().rowwise().sum().maxCoeff();
      };
      const double scale = 1.0 + inf_norm(spd_inverse(a)) * inf_norm(spd_inverse(b));
      p3.record(std::max({r.r1, r.r2, r.r3}) / scale);
    }

    const SplitPair pair = random_split_pair(n, trial_seed(seed, t, kPair));
    {
      const double w = 0.4;
      const MatrixFamily family = [&](double v) { return pair.p1d() / v + pair.p1i(); };
      const MatrixFamily derivative = [&](double v) { return pair.p1d() / (-v * v); };
      const SymMatrix f = family(w);
      const double analytic = trace_of_product(spd_inverse(f).matrix(), derivative(w).matrix());
      jacobi.record(jacobi_residual(family, derivative, w, 1e-6) / (1.0 + std::abs(analytic)));
    }

    double worst_convex = 0.0;
    double worst_chain = 0.0;
    double worst_sign = 0.0;
    double worst_equiv = 0.0;
    double worst_fd = 0.0;
    for (int j = 0; j < kWSamples; ++j) {
      const double w = sample_w(j);
      const double m = std::min(w, 1.0 - w);

      // A convex function has nonnegative second differences at any step,
      // so a wide stencil keeps rounding noise below the tolerance.
      const double hc = 0.1 * m;
      const double det_mid = std::exp(logdet_objective(pair, w));
      const double fd2 = (std::exp(logdet_objective(pair, w + hc)) - 2.0 * det_mid +
                          std::exp(logdet_objective(pair, w - hc))) /
                         (hc * hc);
      worst_convex = std::max(worst_convex, std::max(0.0, -fd2) / (1.0 + std::abs(det_mid)));

      const WEvaluation ev = evaluate(pair, w);
      const double scale = 1.0 + std::abs(ev.d2_direct);
      worst_chain = std::max(worst_chain, std::max(0.0, ev.lower_bound - ev.d2_direct) / scale);
      worst_sign = std::max(worst_sign, std::max(0.0, -ev.lower_bound) / scale);
      worst_equiv = std::max(worst_equiv, std::abs(ev.d2_direct - ev.d2_decomposed) / scale);

      if (condition_number(ev.p1) <= 1e6 && condition_number(ev.p2) <= 1e6) {
        // Smaller steps than this are rounding-dominated at w = 0.01.
        const double h = 1e-4 * m;
        const double fd1 =
            (logdet_objective(pair, w + h) - logdet_objective(pair, w - h)) / (2.0 * h);
        worst_fd = std::max(worst_fd, std::abs(ev.d1 - fd1) / (1.0 + std::abs(fd1)));
      }
    }
    det_convex.record(worst_convex);
    chain.record(worst_chain);
    bound_sign.record(worst_sign);
    equivalence.record(worst_equiv);
    first_fd.record(worst_fd);

    {
      const OptimizeResult opt = minimize_w(pair);
      const GridScanResult grid = grid_scan(pair, kGridSamples, OptimizeOptions{}.delta);
      const double dw = std::abs(opt.w_star - grid.w_best) / 2e-5;
      const double dobj = std::abs(opt.objective_logdet - grid.objective) / 1e-10;
      optimizer.record(std::min(dw, dobj));
    }
  }

  VerifyReport report;
  report.seed = seed;
  report.trials = trials;
  report.dims.assign(dims.begin(), dims.end());
  for (const Tally* t : {&cyclic, &lemma4, &lemma5_gap_check, &lemma5_identity, &p3, &jacobi,
                         &det_convex, &chain, &bound_sign, &equivalence, &first_fd, &optimizer}) {
    report.checks.push_back(t->summary());
  }
  report.overall_pass = std::all_of(report.checks.begin(), report.checks.end(),
                                    [](const CheckSummary& c) { return c.failed == 0; });
  return report;
}

std::string to_json(const VerifyReport& report, const std::string& timestamp) {
  std::string out = "{\n";
  out += fmt::format("  \"seed\": {},\n", report.seed);
  out += fmt::format("  \"trials\": {},\n", report.trials);
  out += fmt::format("  \"dims\": [{}],\n", fmt::join(report.dims, ", "));
  out += fmt::format("  \"timestamp\": \"{}\",\n", timestamp);
  out += "  \"checks\": [\n";
  for (std::size_t k = 0; k < report.checks.size(); ++k) {
    const auto& c = report.checks[k];
    out += fmt::format(
        "    {{\"name\": \"{}\", \"trials\": {}, \"passed\": {}, \"failed\": {}, "
        "\"worst_residual\": {}, \"tolerance\": {}}}{}\n",
        c.name, c.trials, c.passed, c.failed, format_real(c.worst_residual),
        format_real(c.tolerance), k + 1 < report.checks.size() ? "," : "");
  }
  out += "  ],\n";
  out += fmt::format("  \"overall_pass\": {}\n", report.overall_pass ? "true" : "false");
  out += "}\n";
  return out;
}

}  // namespace splitci
