#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "evohandoff/membership.hpp"

namespace evohandoff {

/// Levels per input variable (Slow/Medium/Fast, Near/Medium/Far, Low/Medium/High).
inline constexpr std::size_t kInputLevels = 3;
/// Output levels, encoded 1..5 as Very Low .. Very High.
inline constexpr int kOutputLevels = 5;
inline constexpr int kDefaultResolution = 1001;

/// Max-aggregated firing strength per output level (index 0 = Very Low).
struct FuzzyActivation {
  std::array<double, kOutputLevels> strengths{};

  bool any() const noexcept;
  bool operator==(const FuzzyActivation&) const = default;
};

/// Complete antecedent grid mapping every combination of input levels to an
/// output level in 1..5.
///
/// Arity 3 is the (velocity, distance, channels) grid with 27 cells ordered
/// velocity-major, then distance, then channels. Arity 2 drops the channel
/// input and holds 9 cells ordered velocity-major, then distance.
class RuleBase {
 public:
  RuleBase(std::size_t arity, std::vector<int> consequents);

  /// The initial hand-designed 27-rule table.
  static RuleBase initial_table();

  std::size_t arity() const noexcept { return arity_; }
  std::size_t size() const noexcept { return consequents_.size(); }
  std::span<const int> consequents() const noexcept { return consequents_; }

  static std::size_t cell_count(std::size_t arity) noexcept;
  std::size_t index(std::size_t velocity, std::size_t distance, std::size_t channels = 0) const noexcept;
  int consequent(std::size_t velocity, std::size_t distance, std::size_t channels = 0) const noexcept {
    return consequents_[index(velocity, distance, channels)];
  }

  bool operator==(const RuleBase&) const = default;

 private:
  std::size_t arity_;
  std::vector<int> consequents_;
};

/// Mamdani rule evaluation: min over antecedent degrees, max per consequent.
/// `channel_degrees` is ignored for arity-2 rule bases.
FuzzyActivation evaluate_rules(const RuleBase& rules, std::span<const double> velocity_degrees,
                               std::span<const double> distance_degrees,
                               std::span<const double> channel_degrees);

/// Centroid of the clipped, max-aggregated output set by a midpoint Riemann
/// sum over `resolution` uniform samples of the output universe.
/// Throws NoActivation if the composite set has zero area at that resolution.
double defuzzify_centroid(const FuzzyActivation& activation, const LinguisticVariable& output,
                          int resolution = kDefaultResolution);

/// The immutable fuzzy front end shared by all policies: three input
/// variables, the five-term output variable and a precomputed sample table
/// for defuzzification.
class FuzzySystem {
 public:
  FuzzySystem(LinguisticVariable velocity, LinguisticVariable distance, LinguisticVariable channels,
              LinguisticVariable output, int resolution = kDefaultResolution);

  static FuzzySystem defaults();
  static LinguisticVariable default_velocity();
  static LinguisticVariable default_distance();
  static LinguisticVariable default_channels();
  static LinguisticVariable default_output();

  const LinguisticVariable& velocity() const noexcept { return velocity_; }
  const LinguisticVariable& distance() const noexcept { return distance_; }
  const LinguisticVariable& channels() const noexcept { return channels_; }
  const LinguisticVariable& output() const noexcept { return output_; }
  int resolution() const noexcept { return resolution_; }

  FuzzyActivation activate(const RuleBase& rules, double velocity, double dist_norm,
                           double chan_norm) const;
  /// Same result, bit for bit, as defuzzify_centroid(act, output(), resolution()).
  double defuzzify(const FuzzyActivation& activation) const;

 private:
  LinguisticVariable velocity_;
  LinguisticVariable distance_;
  LinguisticVariable channels_;
  LinguisticVariable output_;
  int resolution_;
  std::vector<double> sample_x_;
  // degree of output level j at sample k lives at [k * kOutputLevels + j]
  std::vector<double> sample_degrees_;
};

/// fuzzify -> evaluate_rules -> defuzzify_centroid.
double compute_rss_threshold(const RuleBase& rules, const FuzzySystem& system, double velocity,
                             double dist_norm, double chan_norm);

}  // namespace evohandoff
