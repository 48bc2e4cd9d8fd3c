#pragma once

#include "splitci/fusion.hpp"
#include "splitci/optimizer.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace splitci::cli {

enum ExitCode : int {
  kOk = 0,
  kVerifyFailed = 1,
  kInputError = 2,
  kNumericalError = 3,
};

// An output path of "-" writes to the `out` stream passed to the command.

struct OptimizeArgs {
  std::filesystem::path input;
  std::filesystem::path output;
  double delta = 1e-6;
  double w_tol = 1e-10;
};

struct SweepArgs {
  std::filesystem::path input;
  std::filesystem::path output;
  int samples = 101;
  double delta = 1e-6;
};

struct FuseArgs {
  std::filesystem::path input;
  std::filesystem::path output;
  double delta = 1e-6;
  double w_tol = 1e-10;
};

struct VerifyArgs {
  std::uint64_t seed = 42;
  int trials = 200;
  std::vector<int> dims{1, 2, 3, 5, 8};
  /// Empty: print the report to `out`.
  std::filesystem::path report;
};

struct DemoArgs {
  int steps = 50;
  std::uint64_t seed = 7;
  std::filesystem::path output;
};

int cmd_optimize(const OptimizeArgs& args, std::ostream& out, std::ostream& err);
int cmd_sweep(const SweepArgs& args, std::ostream& out, std::ostream& err);
int cmd_fuse(const FuseArgs& args, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err);
int cmd_demo(const DemoArgs& args, std::ostream& out, std::ostream& err);

/// {"w", "status", "det_P", "logdet_P", "d1_at_solution", "iterations"}
std::string optimize_json(const OptimizeResult& r);
/// {"w", "x", "P", "Pd", "Pi", "status"}
std::string fuse_json(const FusionResult& r);

inline constexpr const char* kSweepHeader =
    "w,det,logdet,d1,d2_direct,d2_decomposed,lower_bound,T1,T2,T3";

/// Sources fused at demo step k (1-based). x members hold the true state;
/// the demo adds simulated errors on top.
struct DemoSources {
  Vector truth;
  SplitEstimate first;
  SplitEstimate second;
};
DemoSources demo_sources(int step);

/// Parses argv (subcommand first) and dispatches.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace splitci::cli
