#include "evohandoff/rule_source.hpp"

#include <bit>

#include "evohandoff/rng.hpp"

namespace evohandoff {

std::size_t CentroidCache::KeyHash::operator()(const Key& key) const noexcept {
  std::uint64_t h = 0;
  for (auto k : key) {
    h = mix_seed(h ^ k);
  }
  return static_cast<std::size_t>(h);
}

double CentroidCache::get_or_compute(const FuzzySystem& system, const FuzzyActivation& activation) {
  Key key{};
  for (std::size_t i = 0; i < key.size(); ++i) {
    key[i] = std::bit_cast<std::uint64_t>(activation.strengths[i]);
  }
  if (auto it = values_.find(key); it != values_.end()) {
    ++hits_;
    return it->second;
  }
  const double value = system.defuzzify(activation);
  values_.emplace(key, value);
  return value;
}

double RuleThresholdSource::rss_threshold(double velocity, double dist_norm, double chan_norm) const {
  const FuzzyActivation act = system_->activate(rules_, velocity, dist_norm, chan_norm);
  if (cache_ != nullptr) {
    return cache_->get_or_compute(*system_, act);
  }
  return system_->defuzzify(act);
}

}  // namespace evohandoff
