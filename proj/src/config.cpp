#include "toepcov/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace toepcov {

namespace {

using nlohmann::json;

const std::set<std::string> kModels = {"general", "hetnet", "security",
                                       "mmwave"};
const std::set<std::string> kEvaluations = {"analytic", "monte_carlo", "both"};

// Parameter names recognized per model; sweeps may target the numeric ones.
const std::set<std::string> kGeneralKeys = {
    "lambda",          "alpha",          "gamma",
    "signal_shape",    "signal_scale",   "noise_power",
    "interferer_shape", "interferer_scale", "interferer_power"};
const std::set<std::string> kHetnetKeys = {"alpha", "gamma", "noise_power",
                                           "tiers"};
const std::set<std::string> kSecurityKeys = {
    "lambda_t", "lambda_e", "nt", "r0",      "d0",
    "alpha",    "gamma_l",  "gamma_e", "mu", "epsilon"};
const std::set<std::string> kMmwaveKeys = {
    "lambda_t", "r_los", "nt",          "m",       "alpha",
    "gamma",    "noise_power", "d_over_lambda", "pattern"};

const std::set<std::string>& model_keys(const std::string& model) {
  if (model == "general") return kGeneralKeys;
  if (model == "hetnet") return kHetnetKeys;
  if (model == "security") return kSecurityKeys;
  return kMmwaveKeys;
}

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

double num(const json& p, const std::string& key, double fallback) {
  if (!p.contains(key)) return fallback;
  if (!p.at(key).is_number()) fail("parameter '" + key + "' must be a number");
  return p.at(key).get<double>();
}

double req(const json& p, const std::string& key) {
  if (!p.contains(key)) fail("missing required parameter '" + key + "'");
  return num(p, key, 0.0);
}

int int_param(const json& p, const std::string& key, int fallback) {
  double v = num(p, key, fallback);
  if (v != std::floor(v)) fail("parameter '" + key + "' must be an integer");
  return static_cast<int>(v);
}

void check_positive(double v, const std::string& key) {
  if (!(v > 0.0)) fail("parameter '" + key + "' must be positive");
}

// Integer-valued parameters: sweep grids over these must contain integers.
const std::set<std::string> kIntParams = {"signal_shape", "interferer_shape",
                                          "nt", "m"};

}  // namespace

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

RunConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("parse error: ") + e.what());
  }
  if (!doc.is_object()) fail("config must be a JSON object");

  RunConfig cfg;
  cfg.config_hash = fnv1a64(doc.dump());

  for (auto& [key, value] : doc.items()) {
    if (key == "version") {
      if (!value.is_number_integer() || value.get<int>() != 1)
        fail("unsupported config version (expected 1)");
      cfg.version = 1;
    } else if (key == "model") {
      if (!value.is_string() || !kModels.count(value.get<std::string>()))
        fail("unknown model tag");
      cfg.model = value.get<std::string>();
    } else if (key == "evaluation") {
      if (!value.is_string() || !kEvaluations.count(value.get<std::string>()))
        fail("evaluation must be analytic, monte_carlo, or both");
      cfg.evaluation = value.get<std::string>();
    } else if (key == "parameters") {
      if (!value.is_object()) fail("parameters must be an object");
      cfg.parameters = value;
    } else if (key == "trials") {
      if (!value.is_number_integer() || value.get<long long>() < 1)
        fail("trials must be a positive integer");
      cfg.trials = value.get<std::uint64_t>();
    } else if (key == "seed") {
      if (!value.is_number_integer() || value.get<long long>() < 0)
        fail("seed must be a non-negative integer");
      cfg.seed = value.get<std::uint64_t>();
    } else if (key == "sweep") {
      if (!value.is_object() || !value.contains("param") ||
          !value.contains("values"))
        fail("sweep needs 'param' and 'values'");
      SweepSpec s;
      s.param = value.at("param").get<std::string>();
      if (!value.at("values").is_array() || value.at("values").empty())
        fail("sweep values must be a non-empty array");
      for (const auto& v : value.at("values")) {
        if (!v.is_number()) fail("sweep values must be numbers");
        s.values.push_back(v.get<double>());
      }
      for (std::size_t i = 1; i < s.values.size(); ++i)
        if (!(s.values[i] > s.values[i - 1]))
          fail("sweep values must be strictly increasing");
      cfg.sweep = std::move(s);
    } else if (key == "output") {
      if (!value.is_object()) fail("output must be an object");
      if (value.contains("path"))
        cfg.output.path = value.at("path").get<std::string>();
      if (value.contains("format")) {
        cfg.output.format = value.at("format").get<std::string>();
        if (cfg.output.format != "csv" && cfg.output.format != "json")
          fail("output format must be csv or json");
      }
    } else {
      fail("unknown top-level key '" + key + "'");
    }
  }
  if (cfg.model.empty()) fail("missing model tag");

  // Fold *_db keys onto their linear counterparts.
  json folded = json::object();
  for (auto& [key, value] : cfg.parameters.items()) {
    if (key.size() > 3 && key.ends_with("_db")) {
      const std::string base = key.substr(0, key.size() - 3);
      if (cfg.parameters.contains(base))
        fail("both '" + base + "' and '" + key + "' given");
      if (!value.is_number()) fail("parameter '" + key + "' must be a number");
      folded[base] = std::pow(10.0, value.get<double>() / 10.0);
    } else {
      folded[key] = value;
    }
  }
  cfg.parameters = std::move(folded);

  validate_semantics(cfg);
  return cfg;
}

void validate_semantics(const RunConfig& cfg) {
  const json& p = cfg.parameters;
  const auto& known = model_keys(cfg.model);
  for (auto& [key, value] : p.items())
    if (!known.count(key))
      fail("unknown parameter '" + key + "' for model " + cfg.model);

  // Checks on a swept parameter run per row after substitution, so a grid may
  // deliberately cross into invalid territory and be flagged row by row.
  std::string skip;
  if (cfg.sweep) {
    skip = cfg.sweep->param;
    if (!known.count(skip) || skip == "tiers" || skip == "pattern")
      fail("sweep parameter '" + skip + "' not recognized for model " +
           cfg.model);
    if (kIntParams.count(skip))
      for (double v : cfg.sweep->values)
        if (v != std::floor(v))
          fail("sweep over '" + skip + "' needs integer grid values");
  }
  auto skipped = [&](const char* key) { return skip == key; };

  if (!skipped("alpha")) {
    if (!(req(p, "alpha") > 2.0)) fail("path-loss exponent must exceed 2");
  }

  if (cfg.model == "general") {
    if (!skipped("lambda")) check_positive(num(p, "lambda", 1.0), "lambda");
    if (!skipped("gamma")) check_positive(req(p, "gamma"), "gamma");
    if (!skipped("signal_shape") && int_param(p, "signal_shape", 1) < 1)
      fail("signal_shape must be at least 1");
    if (!skipped("signal_scale"))
      check_positive(num(p, "signal_scale", 1.0), "signal_scale");
    if (!skipped("noise_power") && num(p, "noise_power", 0.0) < 0.0)
      fail("noise_power must be >= 0");
    if (!skipped("interferer_shape") && int_param(p, "interferer_shape", 1) < 1)
      fail("interferer_shape must be at least 1");
    if (!skipped("interferer_scale"))
      check_positive(num(p, "interferer_scale", 1.0), "interferer_scale");
    if (!skipped("interferer_power"))
      check_positive(num(p, "interferer_power", 1.0), "interferer_power");
  } else if (cfg.model == "hetnet") {
    if (!skipped("gamma")) check_positive(req(p, "gamma"), "gamma");
    const double noise = num(p, "noise_power", 0.0);
    if (!skipped("noise_power")) {
      if (noise < 0.0) fail("noise_power must be >= 0");
      if (noise > 0.0 && cfg.evaluation != "analytic")
        fail("hetnet Monte Carlo does not model thermal noise; use analytic");
    }
    if (!p.contains("tiers") || !p.at("tiers").is_array() ||
        p.at("tiers").empty())
      fail("hetnet needs a non-empty 'tiers' array");
    for (const auto& t : p.at("tiers")) {
      if (!t.is_object()) fail("each tier must be an object");
      check_positive(req(t, "lambda"), "lambda");
      check_positive(num(t, "power", 1.0), "power");
      check_positive(num(t, "bias", 1.0), "bias");
      const int mant = int_param(t, "antennas", 1);
      const int u = int_param(t, "users", 1);
      if (mant < 1 || u < 1) fail("tier antennas and users must be >= 1");
      if (u > mant) fail("tier users must not exceed antennas");
    }
  } else if (cfg.model == "security") {
    if (!skipped("lambda_t")) check_positive(req(p, "lambda_t"), "lambda_t");
    if (!skipped("lambda_e") && num(p, "lambda_e", 0.0) < 0.0)
      fail("lambda_e must be >= 0");
    if (!skipped("nt") && int_param(p, "nt", 1) < 1)
      fail("nt must be at least 1");
    if (!skipped("r0")) check_positive(num(p, "r0", 1.0), "r0");
    if (!skipped("d0") && num(p, "d0", 0.0) < 0.0) fail("d0 must be >= 0");
    const bool has_l = p.contains("gamma_l") || skipped("gamma_l");
    const bool has_e = p.contains("gamma_e") || skipped("gamma_e");
    const bool has_cap = p.contains("mu") || p.contains("epsilon") ||
                         skipped("mu") || skipped("epsilon");
    if (has_l + has_e + has_cap != 1)
      fail(
          "security model needs exactly one of: gamma_l (connection outage), "
          "gamma_e (secrecy outage bound), or mu+epsilon (secrecy capacity)");
    if (has_l && !skipped("gamma_l"))
      check_positive(req(p, "gamma_l"), "gamma_l");
    if (has_e && !skipped("gamma_e"))
      check_positive(req(p, "gamma_e"), "gamma_e");
    if (has_cap) {
      if (!skipped("mu")) {
        const double mu = req(p, "mu");
        if (!(mu > 0.0 && mu < 1.0))
          fail("probability targets mu and epsilon must lie in (0,1)");
      }
      if (!skipped("epsilon")) {
        const double eps = req(p, "epsilon");
        if (!(eps > 0.0 && eps < 1.0))
          fail("probability targets mu and epsilon must lie in (0,1)");
      }
      if (cfg.evaluation != "analytic")
        fail("secrecy_capacity has no Monte Carlo estimator; use analytic");
    }
  } else {  // mmwave
    if (!skipped("lambda_t")) check_positive(req(p, "lambda_t"), "lambda_t");
    if (!skipped("r_los")) check_positive(req(p, "r_los"), "r_los");
    if (!skipped("nt") && int_param(p, "nt", 1) < 1)
      fail("nt must be at least 1");
    if (!skipped("m") && int_param(p, "m", 1) < 1) fail("m must be at least 1");
    if (!skipped("gamma")) check_positive(req(p, "gamma"), "gamma");
    if (!skipped("d_over_lambda"))
      check_positive(num(p, "d_over_lambda", 0.5), "d_over_lambda");
    if (!skipped("noise_power")) {
      const double noise = num(p, "noise_power", 0.0);
      if (noise < 0.0) fail("noise_power must be >= 0");
      if (noise > 0.0 && cfg.evaluation != "monte_carlo")
        fail("thermal noise is a Monte Carlo extension; use monte_carlo");
    }
    if (p.contains("pattern")) {
      const auto pat = p.at("pattern").get<std::string>();
      if (pat != "cosine" && pat != "actual")
        fail("pattern must be cosine or actual");
    }
  }
}

}  // namespace toepcov
