#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "toepcov/config.hpp"
#include "toepcov/runner.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw toepcov::ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// The only environment override: Monte Carlo worker count.  Results are
// bit-identical for any value, so this is purely a speed knob.
int thread_count() {
  const char* env = std::getenv("TOEPCOV_THREADS");
  if (!env) return 1;
  const int n = std::atoi(env);
  if (n < 1)
    throw toepcov::ConfigError("TOEPCOV_THREADS must be a positive integer");
  return n;
}

struct Options {
  std::string config_path;
  std::string out_path;
  std::string format;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::uint64_t trials = 0;
  bool trials_set = false;
};

int run_mode(const Options& opt, bool require_sweep) {
  toepcov::RunConfig cfg = toepcov::parse_config(read_file(opt.config_path));
  if (opt.seed_set) cfg.seed = opt.seed;
  if (opt.trials_set) {
    if (opt.trials == 0)
      throw toepcov::ConfigError("trials must be a positive integer");
    cfg.trials = opt.trials;
  }
  if (!opt.format.empty()) {
    if (opt.format != "csv" && opt.format != "json")
      throw toepcov::ConfigError("output format must be csv or json");
    cfg.output.format = opt.format;
  }
  if (!opt.out_path.empty()) cfg.output.path = opt.out_path;
  if (require_sweep && !cfg.sweep)
    throw toepcov::ConfigError("config has no sweep block");

  const toepcov::SweepTable table = toepcov::run_config(cfg, thread_count());
  for (const std::string& err : table.errors)
    std::cerr << "row error: " << err << "\n";

  const std::string text = cfg.output.format == "json" ? to_json(table)
                                                       : to_csv(table);
  if (cfg.output.path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(cfg.output.path, std::ios::binary);
    if (!out)
      throw toepcov::ConfigError("cannot write output file: " +
                                 cfg.output.path);
    out << text;
  }
  return table.numeric_failure ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Coverage, outage and secrecy metrics of multi-antenna Poisson "
      "networks"};
  app.set_version_flag("--version", toepcov::kToolVersion);
  app.require_subcommand(1);

  Options opt;
  const auto add_config = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config_path, "JSON run configuration")
        ->required();
  };
  const auto add_run_flags = [&](CLI::App* sub) {
    sub->add_option_function<std::uint64_t>(
        "--seed",
        [&](std::uint64_t v) {
          opt.seed = v;
          opt.seed_set = true;
        },
        "Override the RNG seed");
    sub->add_option_function<std::uint64_t>(
        "--trials",
        [&](std::uint64_t v) {
          opt.trials = v;
          opt.trials_set = true;
        },
        "Override the Monte Carlo trial count");
    sub->add_option("--out", opt.out_path,
                    "Output file (default: the config's output path, else "
                    "stdout)");
    sub->add_option("--format", opt.format, "Output format: csv or json");
  };

  CLI::App* run = app.add_subcommand("run", "Evaluate the configured metric");
  add_config(run);
  add_run_flags(run);
  CLI::App* sweep =
      app.add_subcommand("sweep", "Evaluate across the config's sweep grid");
  add_config(sweep);
  add_run_flags(sweep);
  CLI::App* validate =
      app.add_subcommand("validate", "Check a config without running it");
  add_config(validate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (validate->parsed()) {
      toepcov::parse_config(read_file(opt.config_path));
      std::cout << "ok\n";
      return 0;
    }
    return run_mode(opt, sweep->parsed());
  } catch (const toepcov::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
