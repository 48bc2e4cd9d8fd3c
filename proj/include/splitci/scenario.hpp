#pragma once

#include "splitci/errors.hpp"
#include "splitci/objective.hpp"

#include <filesystem>
#include <optional>
#include <span>
#include <string>

#include <json.hpp>

namespace splitci {

/// Malformed scenario input. `field()` names the JSON member at fault.
class ScenarioError : public Error {
 public:
  ScenarioError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Scenario file contents:
///
///   { "n": 2,
///     "P1d": [n*n reals, row-major], "P1i": [...], "P2d": [...], "P2i": [...],
///     "x1": [n reals], "x2": [n reals] }      // x1, x2 optional
struct Scenario {
  SplitPair pair;
  std::optional<Vector> x1;
  std::optional<Vector> x2;
};

/// Throws ScenarioError. Matrices must be symmetric to within
/// 1e-12 * max|entry| and satisfy the SplitPair invariants.
Scenario parse_scenario(const nlohmann::json& doc);
Scenario load_scenario(const std::filesystem::path& path);

/// `{:.17g}`; lossless for binary64.
std::string format_real(double v);
std::string format_reals(std::span<const double> values);

/// Serializes a scenario in the input format, reals at 17 significant digits.
std::string scenario_to_json(const Scenario& s);

}  // namespace splitci
