// Command-line driver: load a config, run the selected policies over the
// seeds and print a comparison table. Exit codes: 0 ok, 1 runtime error,
// 2 usage or configuration error.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "evohandoff/config.hpp"
#include "evohandoff/errors.hpp"
#include "evohandoff/experiment.hpp"
#include "evohandoff/export.hpp"

namespace {

constexpr int kRuntimeError = 1;
constexpr int kUsageError = 2;

void print_table(const evohandoff::MetricsReport& report) {
  std::printf("%-8s %-22s %12s %12s %12s\n", "policy", "metric", "max", "min", "avg");
  for (const auto& row : report.rows) {
    const std::pair<const char*, const evohandoff::Aggregate*> cells[] = {
        {"handoffs", &row.handoffs},
        {"connection_time_pct", &row.connection_time_pct},
        {"energy_wastage_pct", &row.energy_wastage_pct},
    };
    for (const auto& [name, a] : cells) {
      std::printf("%-8s %-22s %12.3f %12.3f %12.3f\n", std::string(to_string(row.policy)).c_str(), name,
                  a->max, a->min, a->avg);
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fuzzy handoff simulator with GA-evolved rule consequents"};

  std::string config_path;
  std::string policy = "all";
  std::optional<std::uint64_t> seed;
  std::optional<int> runs;
  std::optional<std::string> out_dir;
  std::optional<std::string> format;
  bool eq2_verbatim = false;
  bool write_states = false;
  std::optional<unsigned> threads;

  app.add_option("--config", config_path, "JSON experiment config (defaults when omitted)");
  app.add_option("--policy", policy, "Policy to run")
      ->check(CLI::IsMember({"fls", "gfls", "flah", "gflah", "all"}, CLI::ignore_case));
  app.add_option("--seed", seed, "Run a single seed instead of the configured list");
  app.add_option("--runs", runs, "Use seeds 1..N")->check(CLI::PositiveNumber);
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("--eq2-verbatim", eq2_verbatim, "Report accelerated speed as sqrt(2 a t)");
  app.add_flag("--states", write_states, "Also write per-unit terminal state traces");
  app.add_option("--threads", threads, "Worker threads (0 = hardware concurrency)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  evohandoff::ExperimentConfig config;
  try {
    config = config_path.empty() ? evohandoff::parse_config("") : evohandoff::load_config(config_path);
    if (policy != "all") {
      config.policies = {*evohandoff::parse_policy_kind(policy)};
    }
    if (seed && runs) {
      std::cerr << "error: --seed and --runs are mutually exclusive\n";
      return kUsageError;
    }
    if (seed) {
      config.seeds = {*seed};
      config.runs = 1;
    } else if (runs) {
      config.seeds.clear();
      for (int i = 1; i <= *runs; ++i) {
        config.seeds.push_back(static_cast<std::uint64_t>(i));
      }
      config.runs = *runs;
    }
    if (out_dir) {
      config.output_dir = *out_dir;
    }
    if (format) {
      config.format = *evohandoff::parse_output_format(*format);
    }
    if (eq2_verbatim) {
      config.world.velocity_mode = evohandoff::VelocityMode::Verbatim;
    }
    if (threads) {
      config.threads = *threads;
    }
    config.write_states = config.write_states || write_states;
    config.validate();
  } catch (const evohandoff::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kUsageError;
  } catch (const evohandoff::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }

  try {
    evohandoff::RunOptions options;
    options.record_trace = config.write_states;
    const auto comparison = evohandoff::compare(config, options);
    print_table(comparison.report);
    if (!config.output_dir.empty()) {
      std::cout << "wrote " << config.output_dir.string() << "/report."
                << to_string(config.format) << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
  return 0;
}
