#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace toepcov {

// Anything wrong with a config: parse errors (with byte position), schema
// errors, or semantic rule violations.  The CLI maps these to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SweepSpec {
  std::string param;
  std::vector<double> values;  // strictly increasing
};

struct OutputSpec {
  std::string path;            // empty: stdout
  std::string format = "csv";  // csv | json
};

struct RunConfig {
  int version = 1;
  std::string model;                  // general | hetnet | security | mmwave
  std::string evaluation = "analytic";  // analytic | monte_carlo | both
  nlohmann::json parameters;          // model-specific scalars (dB folded in)
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  std::optional<SweepSpec> sweep;
  OutputSpec output;
  std::uint64_t config_hash = 0;  // FNV-1a of the canonical source document
};

std::uint64_t fnv1a64(std::string_view text);

// Parses and schema-checks a config document.  Keys with an `_db` suffix
// are converted to linear scale and folded onto the unsuffixed key; a key
// present in both spellings is an error.
RunConfig parse_config(const std::string& text);

// Model-specific semantic rules (path-loss exponent, antenna counts,
// probability targets, sweep-parameter names).  Called by parse_config and
// again per sweep row after the swept value is substituted.
void validate_semantics(const RunConfig& cfg);

}  // namespace toepcov
