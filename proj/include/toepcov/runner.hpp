#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "toepcov/config.hpp"

namespace toepcov {

inline constexpr const char* kToolVersion = "1.0.0";

// One output row.  param/value identify the sweep point (empty for a single
// run); method is analytic, monte_carlo, bound_lower or bound_upper; flag is
// empty for analytic rows, ok/mismatch for Monte Carlo rows checked against
// their analytic reference, numeric_error for rows that failed to evaluate,
// infeasible when a capacity target cannot be met.
struct SweepRow {
  std::string param;
  double value = 0.0;
  bool has_value = false;
  double metric = 0.0;
  double std_err = 0.0;
  std::string method;
  std::string flag;
};

struct SweepTable {
  std::vector<std::string> header = {"param",   "value",  "metric",
                                     "std_err", "method", "flag"};
  std::vector<SweepRow> rows;
  std::string model;
  std::string evaluation;
  std::uint64_t config_hash = 0;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  std::string tool_version = kToolVersion;
  bool numeric_failure = false;    // some row carries flag numeric_error
  std::vector<std::string> errors;  // messages for the failed rows
};

// Evaluates the configured metric at every sweep point (grid order) or once
// when no sweep is given.  Row-level validation and numeric errors are
// recorded in place; the call itself only throws on programming errors.
SweepTable run_config(const RunConfig& cfg, int threads = 1);

// Deterministic serializations: identical table -> identical bytes.
std::string to_csv(const SweepTable& table);
std::string to_json(const SweepTable& table);

}  // namespace toepcov
