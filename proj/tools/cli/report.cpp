#include "cli/report.hpp"

#include <chrono>
#include <cmath>
#include <ctime>

#ifndef FFDM_VERSION
#define FFDM_VERSION "unknown"
#endif

namespace ffdm::cli {
namespace {

template <typename T>
nlohmann::json optional_json(const std::optional<T>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

// JSON has no infinity; non-finite values become null.
nlohmann::json number(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

}  // namespace

std::string tool_version() { return FFDM_VERSION; }

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

nlohmann::json to_json(const RunManifest& m) {
  return {
      {"command", m.command},
      {"alpha", optional_json(m.alpha)},
      {"theta", optional_json(m.theta)},
      {"lambda1", m.lambda1},
      {"lambda2", m.lambda2},
      {"L", optional_json(m.left)},
      {"R", optional_json(m.right)},
      {"N", optional_json(m.intervals)},
      {"gl", optional_json(m.gl)},
      {"gr", optional_json(m.gr)},
      {"outputs", m.outputs},
      {"version", m.version},
      {"timestamp", m.timestamp},
  };
}

nlohmann::json to_json(const VerificationReport& r) {
  nlohmann::json params = nlohmann::json::array();
  for (const auto& [name, value] : r.parameters) params.push_back({{"name", name}, {"value", value}});
  nlohmann::json j{
      {"check", r.check},
      {"parameters", params},
      {"max_error", number(r.max_error)},
      {"tolerance", number(r.tolerance)},
      {"pass", r.passed},
  };
  if (!r.detail.empty()) j["detail"] = r.detail;
  if (!r.series.empty()) j["differences"] = r.series;
  if (!r.orders.empty()) j["orders"] = r.orders;
  return j;
}

nlohmann::json solution_json(const Solution& s, const RunManifest& manifest) {
  return {
      {"manifest", to_json(manifest)},
      {"nodes", s.nodes},
      {"values", s.values},
      {"residual_inf", s.residual_inf},
  };
}

nlohmann::json verification_json(const std::vector<VerificationReport>& checks,
                                 const RunManifest& manifest) {
  nlohmann::json arr = nlohmann::json::array();
  bool all = true;
  for (const auto& c : checks) {
    arr.push_back(to_json(c));
    all = all && c.passed;
  }
  return {{"manifest", to_json(manifest)}, {"checks", arr}, {"all_passed", all}};
}

nlohmann::json fit_json(const FitResult& r, const RunManifest& manifest) {
  return {
      {"manifest", to_json(manifest)},
      {"alpha_star", r.alpha_star},
      {"theta_star", r.theta_star},
      {"sse", number(r.sse)},
      {"iterations", r.iterations},
      {"converged", r.converged},
  };
}

}  // namespace ffdm::cli
