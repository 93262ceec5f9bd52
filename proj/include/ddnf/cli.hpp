#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

#include "ddnf/ddesim.hpp"
#include "ddnf/realizer.hpp"
#include "json.hpp"

namespace ddnf {

inline constexpr const char* kToolVersion = "0.1.0";

// Malformed or inconsistent scenario config.  Reported with exit code 2, as
// opposed to 1 for failed verifications and propagated module errors.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CliOptions {
  std::uint64_t seed = 2024;
  int threads = 1;
  // Overrides for the named tolerances (forward, oracle, spectrum,
  // consistency); unknown names are rejected.
  std::map<std::string, double> tolerances;
};

struct ScenarioResult {
  int exitCode = 0;  // 0 ok, 1 failed verification / module error, 2 bad config
  nlohmann::ordered_json report;
  // Tabular side outputs (CSV), keyed by file name.
  std::map<std::string, std::string> artifacts;
};

// Executes one subcommand (design | dims | scan | realize | reduce |
// restrict | simulate) against a JSON scenario config.  The report embeds
// the tool version, the fully resolved config (defaults filled in), the
// seed, thread count and tolerances, and the results; identical inputs
// produce byte-identical reports.  Never throws: failures are folded into
// the report's "error" field and the exit code.
ScenarioResult runScenario(const std::string& subcommand, const nlohmann::json& config,
                           const CliOptions& opts = {});

}  // namespace ddnf
