#include "splitci/scenario.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <vector>

namespace splitci {

namespace {

using nlohmann::json;

std::vector<double> read_reals(const json& doc, const char* field, std::size_t expected) {
  if (!doc.contains(field)) throw ScenarioError(field, "missing");
  const json& arr = doc.at(field);
  if (!arr.is_array()) throw ScenarioError(field, "expected an array of numbers");
  if (arr.size() != expected) {
    throw ScenarioError(field, "expected " + std::to_string(expected) + " values, got " +
                                   std::to_string(arr.size()));
  }
  std::vector<double> out;
  out.reserve(expected);
  for (const json& v : arr) {
    if (!v.is_number()) throw ScenarioError(field, "non-numeric entry");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ScenarioError(field, "non-finite entry");
    out.push_back(x);
  }
  return out;
}

SymMatrix read_matrix(const json& doc, const char* field, Index n) {
  const auto values = read_reals(doc, field, static_cast<std::size_t>(n * n));
  double max_abs = 0.0;
  for (double v : values) max_abs = std::max(max_abs, std::abs(v));
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const double a = values[static_cast<std::size_t>(i * n + j)];
      const double b = values[static_cast<std::size_t>(j * n + i)];
      if (std::abs(a - b) > 1e-12 * max_abs) throw ScenarioError(field, "not symmetric");
    }
  }
  return SymMatrix::from_row_major(n, values);
}

std::optional<Vector> read_vector(const json& doc, const char* field, Index n) {
  if (!doc.contains(field)) return std::nullopt;
  const auto values = read_reals(doc, field, static_cast<std::size_t>(n));
  return Eigen::Map<const Vector>(values.data(), n);
}

}  // namespace

Scenario parse_scenario(const json& doc) {
  if (!doc.is_object()) throw ScenarioError("(root)", "expected a JSON object");
  if (!doc.contains("n")) throw ScenarioError("n", "missing");
  const json& jn = doc.at("n");
  if (!jn.is_number_integer() || jn.get<long long>() < 1) {
    throw ScenarioError("n", "expected a positive integer");
  }
  const auto n = static_cast<Index>(jn.get<long long>());

  SymMatrix p1d = read_matrix(doc, "P1d", n);
  SymMatrix p1i = read_matrix(doc, "P1i", n);
  SymMatrix p2d = read_matrix(doc, "P2d", n);
  SymMatrix p2i = read_matrix(doc, "P2i", n);
  auto x1 = read_vector(doc, "x1", n);
  auto x2 = read_vector(doc, "x2", n);
  try {
    return Scenario{SplitPair(std::move(p1d), std::move(p1i), std::move(p2d), std::move(p2i)),
                    std::move(x1), std::move(x2)};
  } catch (const InvalidSplitPair& e) {
    throw ScenarioError(e.field(), e.what());
  }
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("(file)", "cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ScenarioError("(file)", std::string("invalid JSON: ") + e.what());
  }
  return parse_scenario(doc);
}

std::string format_real(double v) { return fmt::format("{:.17g}", v); }

std::string format_reals(std::span<const double> values) {
  std::string out = "[";
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k > 0) out += ", ";
    out += format_real(values[k]);
  }
  out += "]";
  return out;
}

std::string scenario_to_json(const Scenario& s) {
  const auto& p = s.pair;
  std::string out = "{\n";
  out += fmt::format("  \"n\": {},\n", p.dim());
  out += "  \"P1d\": " + format_reals(p.p1d().row_major()) + ",\n";
  out += "  \"P1i\": " + format_reals(p.p1i().row_major()) + ",\n";
  out += "  \"P2d\": " + format_reals(p.p2d().row_major()) + ",\n";
  out += "  \"P2i\": " + format_reals(p.p2i().row_major());
  for (const auto& [name, x] : {std::pair{"x1", &s.x1}, std::pair{"x2", &s.x2}}) {
    if (x->has_value()) {
      const Vector& v = **x;
      out += fmt::format(",\n  \"{}\": ", name) +
             format_reals(std::span<const double>(v.data(), static_cast<std::size_t>(v.size())));
    }
  }
  out += "\n}\n";
  return out;
}

}  // namespace splitci
