#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace splitci {

/// Outcome of one randomized check. Residuals are normalized so that a
/// trial passes iff its residual is <= tolerance.
struct CheckSummary {
  std::string name;
  int trials = 0;
  int passed = 0;
  int failed = 0;
  double worst_residual = 0.0;
  double tolerance = 0.0;
};

struct VerifyReport {
  std::uint64_t seed = 0;
  int trials = 0;
  std::vector<int> dims;
  std::vector<CheckSummary> checks;
  bool overall_pass = false;
};

/// Runs every check `trials` times; trial t uses dimension
/// dims[t % dims.size()] and inputs seeded from (seed, t).
VerifyReport run_verify(std::uint64_t seed, int trials, std::span<const int> dims);

/// JSON report; `timestamp` is the only field that varies between runs
/// with the same arguments.
std::string to_json(const VerifyReport& report, const std::string& timestamp);

}  // namespace splitci
