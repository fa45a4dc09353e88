#pragma once

#include <array>
#include <cstdint>
#include <unordered_map>

#include "evohandoff/inference.hpp"
#include "evohandoff/world.hpp"

namespace evohandoff {

/// Memo of centroid values keyed by the exact activation bits.
/// Not thread-safe; give each worker its own.
class CentroidCache {
 public:
  double get_or_compute(const FuzzySystem& system, const FuzzyActivation& activation);
  std::size_t size() const noexcept { return values_.size(); }
  std::size_t hits() const noexcept { return hits_; }

 private:
  using Key = std::array<std::uint64_t, kOutputLevels>;
  struct KeyHash {
    std::size_t operator()(const Key& key) const noexcept;
  };
  std::unordered_map<Key, double, KeyHash> values_;
  std::size_t hits_ = 0;
};

/// A rule base evaluated through a fuzzy system, as a threshold signal for the world.
class RuleThresholdSource final : public ThresholdSource {
 public:
  RuleThresholdSource(const FuzzySystem& system, RuleBase rules, CentroidCache* cache = nullptr)
      : system_(&system), rules_(std::move(rules)), cache_(cache) {}

  double rss_threshold(double velocity, double dist_norm, double chan_norm) const override;
  const RuleBase& rules() const noexcept { return rules_; }

 private:
  const FuzzySystem* system_;
  RuleBase rules_;
  CentroidCache* cache_;
};

}  // namespace evohandoff
