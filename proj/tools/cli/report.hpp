#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ffdm/fit.hpp"
#include "ffdm/oracle.hpp"
#include "ffdm/solve.hpp"

namespace ffdm::cli {

/// Everything needed to reproduce a run. Parameters a command does not use
/// serialise as null.
struct RunManifest {
  std::string command;
  std::optional<double> alpha, theta;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  std::optional<double> left, right;
  std::optional<long> intervals;
  std::optional<double> gl, gr;
  std::map<std::string, std::string> outputs;
  std::string version;
  std::string timestamp;  // ISO 8601, UTC
};

std::string tool_version();
std::string utc_timestamp();

nlohmann::json to_json(const RunManifest& manifest);
nlohmann::json to_json(const VerificationReport& report);

nlohmann::json solution_json(const Solution& solution, const RunManifest& manifest);
nlohmann::json verification_json(const std::vector<VerificationReport>& checks,
                                 const RunManifest& manifest);
nlohmann::json fit_json(const FitResult& result, const RunManifest& manifest);

}  // namespace ffdm::cli
