#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "evohandoff/chromosome.hpp"
#include "evohandoff/evolver.hpp"
#include "evohandoff/history.hpp"
#include "evohandoff/inference.hpp"
#include "evohandoff/rule_source.hpp"
#include "evohandoff/world.hpp"

namespace evohandoff {

/// FLS: fixed three-input rules. GFLS: FLS with online GA tuning.
/// FLAH: fixed channel-free rules. GFLAH: FLAH with online GA tuning.
enum class PolicyKind { FLS, GFLS, FLAH, GFLAH };

inline constexpr std::array<PolicyKind, 4> kAllPolicies{PolicyKind::FLS, PolicyKind::GFLS,
                                                        PolicyKind::FLAH, PolicyKind::GFLAH};

std::string_view to_string(PolicyKind kind) noexcept;
/// Case-insensitive.
std::optional<PolicyKind> parse_policy_kind(std::string_view name) noexcept;
bool uses_evolution(PolicyKind kind) noexcept;
bool uses_channels(PolicyKind kind) noexcept;

/// Channel-free projection of a three-input grid: each (velocity, distance)
/// cell takes the median of its three channel-level consequents.
RuleBase derive_flah_rulebase(const RuleBase& three_input);

/// One GA invocation as seen by the run log.
struct EpochRecord {
  int time = 0;
  double incumbent_fitness = 0.0;
  double installed_fitness = 0.0;
  Chromosome installed;
};

/// A rule base bound to the world's decision hook, optionally evolving.
///
/// decide() is read-only. on_epoch() mutates and must not overlap with
/// decide() calls from other threads.
class HandoffPolicy final : public ThresholdSource {
 public:
  /// `rules` is the three-input table; FLAH kinds derive their grid from it.
  /// `seed` keys the GA stream (unused for fixed policies).
  HandoffPolicy(PolicyKind kind, std::shared_ptr<const FuzzySystem> system, const RuleBase& rules,
                EvolverConfig evolver = {}, std::uint64_t seed = 0);

  double decide(double velocity, double dist_norm, double chan_norm) const;
  double rss_threshold(double velocity, double dist_norm, double chan_norm) const override {
    return decide(velocity, dist_norm, chan_norm);
  }

  /// Runs the GA when it is due (`now - last_invocation >= period` and the
  /// window is warm) and installs the best chromosome. Returns true if it ran.
  bool on_epoch(const HistoryWindow& history, int now);

  PolicyKind kind() const noexcept { return kind_; }
  const RuleBase& rule_base() const noexcept { return live_.rules(); }
  Chromosome chromosome() const { return Chromosome::from_rule_base(live_.rules()); }
  const FuzzySystem& system() const noexcept { return *system_; }
  const EvolverConfig& evolver_config() const noexcept { return evolver_; }
  int last_invocation() const noexcept { return last_invocation_; }
  std::span<const Chromosome> population() const noexcept { return population_; }
  std::span<const EpochRecord> evolution_log() const noexcept { return log_; }

 private:
  PolicyKind kind_;
  std::shared_ptr<const FuzzySystem> system_;
  RuleThresholdSource live_;
  EvolverConfig evolver_;
  RngStream rng_;
  std::vector<Chromosome> population_;
  int last_invocation_ = 0;
  std::vector<EpochRecord> log_;
};

}  // namespace evohandoff
