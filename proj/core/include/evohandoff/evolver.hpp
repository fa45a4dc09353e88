#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "evohandoff/chromosome.hpp"
#include "evohandoff/history.hpp"
#include "evohandoff/rng.hpp"

namespace evohandoff {

enum class FitnessMode {
  Replay,      ///< per-terminal replay with other terminals frozen
  Resimulate,  ///< full world re-simulation from the window start
};

struct EvolverConfig {
  int population_size = 50;
  double crossover_prob = 0.9;
  double mutation_prob = 0.1;  ///< per gene
  int tournament_size = 10;
  int generations = 20;  ///< per invocation
  /// Time units between GA invocations; std::nullopt disables the GA.
  std::optional<int> invocation_period = 4;
  int window = 4;
  double weight_handoff = 1.0;
  double weight_cut = 1.0;
  FitnessMode fitness_mode = FitnessMode::Replay;

  /// Throws ConfigError naming the first violated key.
  void validate() const;

  bool operator==(const EvolverConfig&) const = default;
};

using FitnessFunction = std::function<double(const Chromosome&)>;

/// Member 0 is `seed`; the rest draw every gene uniformly from 1..5.
std::vector<Chromosome> init_population(const Chromosome& seed, const EvolverConfig& config,
                                        RngStream& rng);

/// Samples k distinct indices without replacement and returns the one with
/// the lowest fitness (lowest index on ties).
std::size_t tournament_select(std::span<const double> fitness, std::size_t k, RngStream& rng);

/// Swaps the suffixes starting at `cut` (1 <= cut < length).
std::pair<Chromosome, Chromosome> crossover_at(const Chromosome& a, const Chromosome& b, std::size_t cut);

/// With probability `prob`, crossover at a cut drawn uniformly from
/// 1..length-1; otherwise copies of the parents.
std::pair<Chromosome, Chromosome> one_point_crossover(const Chromosome& a, const Chromosome& b,
                                                      double prob, RngStream& rng);

/// Each gene is redrawn uniformly from 1..5 with probability `pm`
/// (the redraw may repeat the old value).
Chromosome mutate_random_reset(const Chromosome& c, double pm, RngStream& rng);

struct EvolveResult {
  Chromosome best;
  double best_fitness = 0.0;
  /// Best fitness in the population: entry 0 for the initial population,
  /// then one per generation.
  std::vector<double> generation_best;
};

/// Generational GA with elitism of one. `population` is replaced by the
/// final generation. The all-time best only changes on strict improvement,
/// so earlier members (member 0 first) win ties.
EvolveResult evolve(std::vector<Chromosome>& population, const FitnessFunction& fitness,
                    const EvolverConfig& config, RngStream& rng);

/// weight_handoff * handoffs + weight_cut * cuts.
double weighted_fitness(const EventCounts& counts, const EvolverConfig& config) noexcept;

/// Window fitness: weight_handoff * handoffs + weight_cut * cuts when the
/// window is replayed with `candidate` driving every decision. Lower is better.
double fitness(const Chromosome& candidate, const HistoryWindow& window, const FuzzySystem& system,
               const EvolverConfig& config);

/// evolve() with window fitness; memoizes centroids and repeated chromosomes.
EvolveResult evolve(std::vector<Chromosome>& population, const HistoryWindow& window,
                    const FuzzySystem& system, const EvolverConfig& config, RngStream& rng);

}  // namespace evohandoff
