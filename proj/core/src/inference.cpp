#include "evohandoff/inference.hpp"

#include <algorithm>
#include <string>

#include "evohandoff/errors.hpp"

namespace evohandoff {

namespace {

double sample_point(double lo, double step, int k) noexcept {
  return lo + (static_cast<double>(k) + 0.5) * step;
}

void require_levels(const LinguisticVariable& var, std::size_t expected) {
  if (var.size() != expected) {
    throw ValidationError("linguistic variable '" + var.name() + "' must have " +
                          std::to_string(expected) + " terms");
  }
}

}  // namespace

bool FuzzyActivation::any() const noexcept {
  return std::any_of(strengths.begin(), strengths.end(), [](double s) { return s > 0.0; });
}

RuleBase::RuleBase(std::size_t arity, std::vector<int> consequents)
    : arity_(arity), consequents_(std::move(consequents)) {
  if (arity_ != 2 && arity_ != 3) {
    throw ValidationError("rule base arity must be 2 or 3");
  }
  if (consequents_.size() != cell_count(arity_)) {
    throw ValidationError("rule base of arity " + std::to_string(arity_) + " needs " +
                          std::to_string(cell_count(arity_)) + " consequents");
  }
  for (int c : consequents_) {
    if (c < 1 || c > kOutputLevels) {
      throw ValidationError("rule consequent out of range 1..5: " + std::to_string(c));
    }
  }
}

RuleBase RuleBase::initial_table() {
  // VL=1 L=2 M=3 H=4 VH=5; rows velocity-major, then distance, then channels.
  return RuleBase(3, {2, 2, 3, 3, 3, 4, 4, 5, 5,    // Slow
                      1, 2, 2, 3, 3, 3, 4, 4, 4,    // Medium
                      1, 1, 2, 2, 2, 3, 3, 4, 4});  // Fast
}

std::size_t RuleBase::cell_count(std::size_t arity) noexcept {
  std::size_t n = 1;
  for (std::size_t i = 0; i < arity; ++i) {
    n *= kInputLevels;
  }
  return n;
}

std::size_t RuleBase::index(std::size_t velocity, std::size_t distance,
                            std::size_t channels) const noexcept {
  if (arity_ == 2) {
    return velocity * kInputLevels + distance;
  }
  return (velocity * kInputLevels + distance) * kInputLevels + channels;
}

FuzzyActivation evaluate_rules(const RuleBase& rules, std::span<const double> velocity_degrees,
                               std::span<const double> distance_degrees,
                               std::span<const double> channel_degrees) {
  FuzzyActivation act;
  const auto consequents = rules.consequents();
  std::size_t cell = 0;
  for (std::size_t v = 0; v < kInputLevels; ++v) {
    for (std::size_t d = 0; d < kInputLevels; ++d) {
      const double vd = std::min(velocity_degrees[v], distance_degrees[d]);
      if (rules.arity() == 2) {
        auto& s = act.strengths[static_cast<std::size_t>(consequents[cell++] - 1)];
        s = std::max(s, vd);
        continue;
      }
      for (std::size_t c = 0; c < kInputLevels; ++c) {
        const double w = std::min(vd, channel_degrees[c]);
        auto& s = act.strengths[static_cast<std::size_t>(consequents[cell++] - 1)];
        s = std::max(s, w);
      }
    }
  }
  return act;
}

double defuzzify_centroid(const FuzzyActivation& activation, const LinguisticVariable& output,
                          int resolution) {
  if (resolution <= 0) {
    throw DomainError("defuzzification resolution must be positive");
  }
  if (output.size() != static_cast<std::size_t>(kOutputLevels)) {
    throw ValidationError("output variable must have 5 terms");
  }
  if (!activation.any()) {
    throw NoActivation();
  }
  const auto terms = output.terms();
  const double step = (output.hi() - output.lo()) / resolution;
  double moment = 0.0;
  double area = 0.0;
  for (int k = 0; k < resolution; ++k) {
    const double x = sample_point(output.lo(), step, k);
    double mu = 0.0;
    for (std::size_t j = 0; j < terms.size(); ++j) {
      mu = std::max(mu, std::min(activation.strengths[j], terms[j].degree(x)));
    }
    moment += x * mu;
    area += mu;
  }
  if (!(area > 0.0)) {
    throw NoActivation();
  }
  return moment / area;
}

FuzzySystem::FuzzySystem(LinguisticVariable velocity, LinguisticVariable distance,
                         LinguisticVariable channels, LinguisticVariable output, int resolution)
    : velocity_(std::move(velocity)),
      distance_(std::move(distance)),
      channels_(std::move(channels)),
      output_(std::move(output)),
      resolution_(resolution) {
  require_levels(velocity_, kInputLevels);
  require_levels(distance_, kInputLevels);
  require_levels(channels_, kInputLevels);
  require_levels(output_, kOutputLevels);
  if (resolution_ <= 0) {
    throw DomainError("defuzzification resolution must be positive");
  }
  const double step = (output_.hi() - output_.lo()) / resolution_;
  sample_x_.resize(static_cast<std::size_t>(resolution_));
  sample_degrees_.resize(sample_x_.size() * kOutputLevels);
  for (int k = 0; k < resolution_; ++k) {
    const double x = sample_point(output_.lo(), step, k);
    sample_x_[static_cast<std::size_t>(k)] = x;
    for (std::size_t j = 0; j < kOutputLevels; ++j) {
      sample_degrees_[static_cast<std::size_t>(k) * kOutputLevels + j] = output_.terms()[j].degree(x);
    }
  }
}

LinguisticVariable FuzzySystem::default_velocity() {
  return {"velocity", 0.0, 30.0,
          {MembershipFunction::triangular("Slow", 0, 0, 15),
           MembershipFunction::triangular("Medium", 5, 15, 25),
           MembershipFunction::triangular("Fast", 15, 30, 30)}};
}

LinguisticVariable FuzzySystem::default_distance() {
  return {"distance", 0.0, 1.0,
          {MembershipFunction::triangular("Near", 0, 0, 0.4),
           MembershipFunction::triangular("Medium", 0.2, 0.5, 0.8),
           MembershipFunction::triangular("Far", 0.6, 1, 1)}};
}

LinguisticVariable FuzzySystem::default_channels() {
  return {"channels", 0.0, 1.0,
          {MembershipFunction::triangular("Low", 0, 0, 0.5),
           MembershipFunction::triangular("Medium", 0.25, 0.5, 0.75),
           MembershipFunction::triangular("High", 0.5, 1, 1)}};
}

LinguisticVariable FuzzySystem::default_output() {
  return {"rss", 0.0, 1.0,
          {MembershipFunction::triangular("VeryLow", 0, 0, 0.25),
           MembershipFunction::triangular("Low", 0, 0.25, 0.5),
           MembershipFunction::triangular("Medium", 0.25, 0.5, 0.75),
           MembershipFunction::triangular("High", 0.5, 0.75, 1),
           MembershipFunction::triangular("VeryHigh", 0.75, 1, 1)}};
}

FuzzySystem FuzzySystem::defaults() {
  return {default_velocity(), default_distance(), default_channels(), default_output()};
}

FuzzyActivation FuzzySystem::activate(const RuleBase& rules, double velocity, double dist_norm,
                                      double chan_norm) const {
  std::array<double, kInputLevels> vd{};
  std::array<double, kInputLevels> dd{};
  std::array<double, kInputLevels> cd{};
  velocity_.fuzzify_into(velocity, vd);
  distance_.fuzzify_into(dist_norm, dd);
  channels_.fuzzify_into(chan_norm, cd);
  return evaluate_rules(rules, vd, dd, cd);
}

double FuzzySystem::defuzzify(const FuzzyActivation& activation) const {
  if (!activation.any()) {
    throw NoActivation();
  }
  const auto& s = activation.strengths;
  double moment = 0.0;
  double area = 0.0;
  const double* deg = sample_degrees_.data();
  for (std::size_t k = 0; k < sample_x_.size(); ++k, deg += kOutputLevels) {
    double mu = 0.0;
    for (std::size_t j = 0; j < kOutputLevels; ++j) {
      mu = std::max(mu, std::min(s[j], deg[j]));
    }
    moment += sample_x_[k] * mu;
    area += mu;
  }
  if (!(area > 0.0)) {
    throw NoActivation();
  }
  return moment / area;
}

double compute_rss_threshold(const RuleBase& rules, const FuzzySystem& system, double velocity,
                             double dist_norm, double chan_norm) {
  return system.defuzzify(system.activate(rules, velocity, dist_norm, chan_norm));
}

}  // namespace evohandoff
