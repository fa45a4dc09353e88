#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "evohandoff/evolver.hpp"
#include "evohandoff/inference.hpp"
#include "evohandoff/policy.hpp"
#include "evohandoff/world.hpp"

namespace evohandoff {

enum class OutputFormat { Csv, Json };

std::string_view to_string(OutputFormat format) noexcept;
std::optional<OutputFormat> parse_output_format(std::string_view name) noexcept;

/// Everything one experiment needs. Defaults reproduce the seven-station,
/// 50-terminal, 75-unit scenario with 10 seeded runs of all four policies.
struct ExperimentConfig {
  WorldConfig world;
  std::shared_ptr<const FuzzySystem> fuzzy = std::make_shared<const FuzzySystem>(FuzzySystem::defaults());
  RuleBase rules = RuleBase::initial_table();
  EvolverConfig evolver;
  std::vector<PolicyKind> policies{kAllPolicies.begin(), kAllPolicies.end()};
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  int runs = 10;
  std::filesystem::path output_dir = "results";
  OutputFormat format = OutputFormat::Csv;
  bool write_states = false;
  unsigned threads = 0;  ///< 0: one per hardware thread

  /// Throws ConfigError naming the first violated key.
  void validate() const;
};

/// Parses the JSON config format (see docs/config.md). Absent keys take
/// their defaults; unknown keys are rejected. Blank text yields the defaults.
ExperimentConfig parse_config(std::string_view text);

/// Throws IoError if the file cannot be read, ConfigError if it is invalid.
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace evohandoff
