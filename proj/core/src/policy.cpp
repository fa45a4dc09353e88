#include "evohandoff/policy.hpp"

#include <algorithm>
#include <cctype>

#include "evohandoff/errors.hpp"

namespace evohandoff {

namespace {

constexpr std::uint64_t kEvolverStreamTag = 0x6761;

RuleBase grid_for(PolicyKind kind, const RuleBase& rules) {
  if (uses_channels(kind)) {
    if (rules.arity() != 3) {
      throw ValidationError("three-input policies need a 27-cell rule base");
    }
    return rules;
  }
  return rules.arity() == 2 ? rules : derive_flah_rulebase(rules);
}

}  // namespace

std::string_view to_string(PolicyKind kind) noexcept {
  switch (kind) {
    case PolicyKind::FLS:
      return "FLS";
    case PolicyKind::GFLS:
      return "GFLS";
    case PolicyKind::FLAH:
      return "FLAH";
    case PolicyKind::GFLAH:
      return "GFLAH";
  }
  return "?";
}

std::optional<PolicyKind> parse_policy_kind(std::string_view name) noexcept {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  for (auto kind : kAllPolicies) {
    if (to_string(kind) == upper) {
      return kind;
    }
  }
  return std::nullopt;
}

bool uses_evolution(PolicyKind kind) noexcept {
  return kind == PolicyKind::GFLS || kind == PolicyKind::GFLAH;
}

bool uses_channels(PolicyKind kind) noexcept {
  return kind == PolicyKind::FLS || kind == PolicyKind::GFLS;
}

RuleBase derive_flah_rulebase(const RuleBase& three_input) {
  if (three_input.arity() != 3) {
    throw ValidationError("derive_flah_rulebase expects a 27-cell rule base");
  }
  std::vector<int> cells;
  cells.reserve(RuleBase::cell_count(2));
  for (std::size_t v = 0; v < kInputLevels; ++v) {
    for (std::size_t d = 0; d < kInputLevels; ++d) {
      std::array<int, kInputLevels> triple{};
      for (std::size_t c = 0; c < kInputLevels; ++c) {
        triple[c] = three_input.consequent(v, d, c);
      }
      std::sort(triple.begin(), triple.end());
      cells.push_back(triple[1]);
    }
  }
  return RuleBase(2, std::move(cells));
}

HandoffPolicy::HandoffPolicy(PolicyKind kind, std::shared_ptr<const FuzzySystem> system,
                             const RuleBase& rules, EvolverConfig evolver, std::uint64_t seed)
    : kind_(kind),
      system_(std::move(system)),
      live_(*system_, grid_for(kind, rules)),
      evolver_(evolver),
      rng_(RngStream(seed).derive(kEvolverStreamTag)) {
  evolver_.validate();
}

double HandoffPolicy::decide(double velocity, double dist_norm, double chan_norm) const {
  return live_.rss_threshold(velocity, dist_norm, chan_norm);
}

bool HandoffPolicy::on_epoch(const HistoryWindow& history, int now) {
  if (!uses_evolution(kind_) || !evolver_.invocation_period) {
    return false;
  }
  if (now - last_invocation_ < *evolver_.invocation_period || !history.warm()) {
    return false;
  }
  const Chromosome incumbent = chromosome();
  if (population_.empty()) {
    population_ = init_population(incumbent, evolver_, rng_);
  } else {
    population_.front() = incumbent;
  }
  const double incumbent_fitness = fitness(incumbent, history, *system_, evolver_);
  EvolveResult result = evolve(population_, history, *system_, evolver_, rng_);
  live_ = RuleThresholdSource(*system_, result.best.to_rule_base());
  last_invocation_ = now;
  log_.push_back({now, incumbent_fitness, result.best_fitness, std::move(result.best)});
  return true;
}

}  // namespace evohandoff
