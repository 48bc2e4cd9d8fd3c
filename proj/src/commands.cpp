#include "splitci/commands.hpp"

#include "splitci/errors.hpp"
#include "splitci/random.hpp"
#include "splitci/scenario.hpp"
#include "splitci/verify.hpp"

#include <CLI11.hpp>
#include <Eigen/Cholesky>
#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

namespace splitci::cli {

namespace {

std::span<const double> as_span(const Vector& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}

// Writes `text` to `path`, or to `out` for "-". Returns false on I/O failure.
bool emit(const std::filesystem::path& path, const std::string& text, std::ostream& out,
          std::ostream& err) {
  if (path == "-") {
    out << text;
    return static_cast<bool>(out);
  }
  std::ofstream file(path, std::ios::binary);
  file << text;
  if (!file) {
    err << "error: cannot write " << path.string() << "\n";
    return false;
  }
  return true;
}

// Maps library errors onto the exit-code contract.
int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ScenarioError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const InvalidArgument& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const InvalidSplitPair& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    err << "numerical error: " << e.what() << "\n";
    return kNumericalError;
  }
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

SymMatrix rotated_diag(double angle, double a, double b) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Matrix r(2, 2);
  r << c, -s, s, c;
  return SymMatrix(r * Vector{{a, b}}.asDiagonal() * r.transpose());
}

}  // namespace

std::string optimize_json(const OptimizeResult& r) {
  return fmt::format(
      "{{\n  \"w\": {},\n  \"status\": \"{}\",\n  \"det_P\": {},\n  \"logdet_P\": {},\n"
      "  \"d1_at_solution\": {},\n  \"iterations\": {}\n}}\n",
      format_real(r.w_star), to_string(r.status), format_real(r.objective_det),
      format_real(r.objective_logdet), format_real(r.d1_at_solution), r.iterations);
}

std::string fuse_json(const FusionResult& r) {
  return fmt::format(
      "{{\n  \"w\": {},\n  \"x\": {},\n  \"P\": {},\n  \"Pd\": {},\n  \"Pi\": {},\n"
      "  \"status\": \"{}\"\n}}\n",
      format_real(r.w), format_reals(as_span(r.fused.x)), format_reals(r.p.row_major()),
      format_reals(r.fused.cov_d.row_major()), format_reals(r.fused.cov_i.row_major()),
      to_string(r.optimize.status));
}

int cmd_optimize(const OptimizeArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Scenario s = load_scenario(args.input);
    OptimizeOptions opts;
    opts.delta = args.delta;
    opts.w_tol = args.w_tol;
    const OptimizeResult r = minimize_w(s.pair, opts);
    return emit(args.output, optimize_json(r), out, err) ? kOk : kInputError;
  });
}

int cmd_sweep(const SweepArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (args.samples < 3) throw InvalidArgument("--samples must be at least 3");
    if (!(args.delta > 0.0 && args.delta < 0.5)) throw InvalidArgument("--delta must lie in (0, 0.5)");
    const Scenario s = load_scenario(args.input);
    std::string csv = std::string(kSweepHeader) + "\n";
    for (int k = 0; k < args.samples; ++k) {
      const WEvaluation ev = evaluate(s.pair, grid_point(k, args.samples, args.delta));
      csv += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", format_real(ev.w),
                         format_real(ev.det_p), format_real(ev.logdet_p), format_real(ev.d1),
                         format_real(ev.d2_direct), format_real(ev.d2_decomposed),
                         format_real(ev.lower_bound), format_real(ev.t1), format_real(ev.t2),
                         format_real(ev.t3));
    }
    return emit(args.output, csv, out, err) ? kOk : kInputError;
  });
}

int cmd_fuse(const FuseArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Scenario s = load_scenario(args.input);
    if (!s.x1) throw ScenarioError("x1", "missing (required by fuse)");
    if (!s.x2) throw ScenarioError("x2", "missing (required by fuse)");
    const SplitEstimate e1{*s.x1, s.pair.p1d(), s.pair.p1i()};
    const SplitEstimate e2{*s.x2, s.pair.p2d(), s.pair.p2i()};
    OptimizeOptions opts;
    opts.delta = args.delta;
    opts.w_tol = args.w_tol;
    const FusionResult r = split_ci_fuse(e1, e2, opts);
    return emit(args.output, fuse_json(r), out, err) ? kOk : kInputError;
  });
}

int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (args.trials < 1) throw InvalidArgument("--trials must be at least 1");
    if (args.dims.empty()) throw InvalidArgument("--dims must not be empty");
    const VerifyReport report = run_verify(args.seed, args.trials, args.dims);
    const std::string text = to_json(report, utc_timestamp());
    const std::filesystem::path path = args.report.empty() ? "-" : args.report;
    if (!emit(path, text, out, err)) return static_cast<int>(kInputError);
    for (const auto& c : report.checks) {
      if (c.failed > 0) {
        err << "FAIL " << c.name << ": " << c.failed << "/" << c.trials
            << " trials, worst residual " << format_real(c.worst_residual) << " > "
            << format_real(c.tolerance) << "\n";
      }
    }
    return static_cast<int>(report.overall_pass ? kOk : kVerifyFailed);
  });
}

DemoSources demo_sources(int step) {
  const double k = static_cast<double>(step);
  Vector truth{{10.0 * std::cos(0.05 * k), 10.0 * std::sin(0.05 * k)}};
  Matrix d1(2, 2);
  d1 << 1.0, 0.3, 0.3, 0.5;
  Matrix d2(2, 2);
  d2 << 0.6, -0.2, -0.2, 1.2;
  const double angle = 0.15 * k;
  return DemoSources{
      truth,
      SplitEstimate{truth, SymMatrix(d1), rotated_diag(angle, 0.2, 2.0)},
      SplitEstimate{truth, SymMatrix(d2), rotated_diag(angle + 1.5707963267948966, 0.3, 1.5)},
  };
}

// Two estimate streams observe a moving 2-D state. Their dependent errors
// are driven by one shared draw z (true cross-correlation unknown to the
// fuser); their independent errors by separate draws. Per step the normals
// are consumed in the order z, n1, n2, two components each.
int cmd_demo(const DemoArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (args.steps < 1) throw InvalidArgument("--steps must be at least 1");
    NormalStream normal(args.seed);
    std::string csv = "step,w,det_P,err_norm\n";
    for (int step = 1; step <= args.steps; ++step) {
      DemoSources src = demo_sources(step);
      auto draw = [&] {
        Vector v(2);
        v(0) = normal.next();
        v(1) = normal.next();
        return v;
      };
      const Vector z = draw();
      const Vector n1 = draw();
      const Vector n2 = draw();
      auto lower = [](const SymMatrix& m) { return Matrix(Eigen::LLT<Matrix>(m.matrix()).matrixL()); };
      src.first.x += lower(src.first.cov_d) * z + lower(src.first.cov_i) * n1;
      src.second.x += lower(src.second.cov_d) * z + lower(src.second.cov_i) * n2;

      const FusionResult r = split_ci_fuse(src.first, src.second);
      const double det_p = std::exp(chol_logdet(r.p));
      csv += fmt::format("{},{},{},{}\n", step, format_real(r.w), format_real(det_p),
                         format_real((r.fused.x - src.truth).norm()));
    }
    return emit(args.output, csv, out, err) ? kOk : kInputError;
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Split covariance intersection: w-optimization, sweeps, fusion and verification"};
  app.require_subcommand(1);

  OptimizeArgs opt;
  auto* optimize = app.add_subcommand("optimize", "Minimize det P(w) for a scenario");
  optimize->add_option("input", opt.input, "Scenario JSON")->required();
  optimize->add_option("output", opt.output, "Result JSON ('-' for stdout)")->required();
  optimize->add_option("--delta", opt.delta, "Boundary clamp")->capture_default_str();
  optimize->add_option("--w-tol", opt.w_tol, "Bisection width tolerance")->capture_default_str();

  SweepArgs sw;
  auto* sweep = app.add_subcommand("sweep", "Tabulate every derivative quantity over w");
  sweep->add_option("input", sw.input, "Scenario JSON")->required();
  sweep->add_option("output", sw.output, "CSV output ('-' for stdout)")->required();
  sweep->add_option("--samples", sw.samples, "Number of w samples")->capture_default_str();
  sweep->add_option("--delta", sw.delta, "Boundary clamp")->capture_default_str();

  FuseArgs fu;
  auto* fuse = app.add_subcommand("fuse", "Fuse two split estimates");
  fuse->add_option("input", fu.input, "Scenario JSON with x1 and x2")->required();
  fuse->add_option("output", fu.output, "Result JSON ('-' for stdout)")->required();
  fuse->add_option("--delta", fu.delta, "Boundary clamp")->capture_default_str();
  fuse->add_option("--w-tol", fu.w_tol, "Bisection width tolerance")->capture_default_str();

  VerifyArgs ve;
  auto* verify = app.add_subcommand("verify", "Run the randomized verification suite");
  verify->add_option("--seed", ve.seed, "Random seed")->capture_default_str();
  verify->add_option("--trials", ve.trials, "Trials per check")->capture_default_str();
  verify->add_option("--dims", ve.dims, "Dimensions, cycled over trials")
      ->delimiter(',')
      ->capture_default_str();
  verify->add_option("--report", ve.report, "Report JSON path (default stdout)");

  DemoArgs de;
  auto* demo = app.add_subcommand("demo", "Repeated two-source fusion demo");
  demo->add_option("--steps", de.steps, "Number of fusion steps")->capture_default_str();
  demo->add_option("--seed", de.seed, "Random seed")->capture_default_str();
  demo->add_option("--output", de.output, "CSV output ('-' for stdout)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kInputError;
  }

  if (*optimize) return cmd_optimize(opt, out, err);
  if (*sweep) return cmd_sweep(sw, out, err);
  if (*fuse) return cmd_fuse(fu, out, err);
  if (*verify) return cmd_verify(ve, out, err);
  return cmd_demo(de, out, err);
}

}  // namespace splitci::cli
