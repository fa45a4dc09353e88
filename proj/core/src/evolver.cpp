#include "evohandoff/evolver.hpp"

#include <map>
#include <numeric>

#include "evohandoff/errors.hpp"
#include "evohandoff/rule_source.hpp"

namespace evohandoff {

namespace {

std::size_t argmin(std::span<const double> values) noexcept {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] < values[best]) {
      best = i;
    }
  }
  return best;
}

EventCounts run_window(const HistoryWindow& window, const ThresholdSource& source, FitnessMode mode) {
  return mode == FitnessMode::Replay ? replay_window(window, source) : resimulate_window(window, source);
}

}  // namespace

void EvolverConfig::validate() const {
  if (population_size < 1) {
    throw ConfigError("evolver.population_size", "must be at least 1");
  }
  if (!(crossover_prob >= 0.0 && crossover_prob <= 1.0)) {
    throw ConfigError("evolver.crossover_prob", "must be in [0, 1]");
  }
  if (!(mutation_prob >= 0.0 && mutation_prob <= 1.0)) {
    throw ConfigError("evolver.mutation_prob", "must be in [0, 1]");
  }
  if (tournament_size < 1 || tournament_size > population_size) {
    throw ConfigError("evolver.tournament_size", "must be in [1, population_size]");
  }
  if (generations < 0) {
    throw ConfigError("evolver.generations", "must be non-negative");
  }
  if (invocation_period && *invocation_period < 1) {
    throw ConfigError("evolver.invocation_period", "must be positive or null");
  }
  if (window < 1) {
    throw ConfigError("evolver.window", "must be at least 1");
  }
  if (!(weight_handoff >= 0.0)) {
    throw ConfigError("evolver.weight_handoff", "must be non-negative");
  }
  if (!(weight_cut >= 0.0)) {
    throw ConfigError("evolver.weight_cut", "must be non-negative");
  }
}

std::vector<Chromosome> init_population(const Chromosome& seed, const EvolverConfig& config,
                                        RngStream& rng) {
  std::vector<Chromosome> population;
  population.reserve(static_cast<std::size_t>(config.population_size));
  population.push_back(seed);
  std::vector<int> genes(seed.size());
  for (int i = 1; i < config.population_size; ++i) {
    for (auto& g : genes) {
      g = static_cast<int>(rng.uniform_int(1, kOutputLevels));
    }
    population.emplace_back(genes);
  }
  return population;
}

std::size_t tournament_select(std::span<const double> fitness, std::size_t k, RngStream& rng) {
  const std::size_t n = fitness.size();
  if (k == 0 || k > n) {
    throw DomainError("tournament size must be in [1, population size]");
  }
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::size_t winner = n;
  for (std::size_t i = 0; i < k; ++i) {
    const auto j = static_cast<std::size_t>(rng.uniform_int(static_cast<std::int64_t>(i),
                                                            static_cast<std::int64_t>(n - 1)));
    std::swap(idx[i], idx[j]);
    const std::size_t cand = idx[i];
    if (winner == n || fitness[cand] < fitness[winner] ||
        (fitness[cand] == fitness[winner] && cand < winner)) {
      winner = cand;
    }
  }
  return winner;
}

std::pair<Chromosome, Chromosome> crossover_at(const Chromosome& a, const Chromosome& b, std::size_t cut) {
  if (a.size() != b.size()) {
    throw DomainError("crossover parents differ in length");
  }
  if (cut < 1 || cut >= a.size()) {
    throw DomainError("crossover cut must be in [1, length - 1]");
  }
  std::vector<int> c1(a.genes().begin(), a.genes().end());
  std::vector<int> c2(b.genes().begin(), b.genes().end());
  for (std::size_t i = cut; i < c1.size(); ++i) {
    std::swap(c1[i], c2[i]);
  }
  return {Chromosome(std::move(c1)), Chromosome(std::move(c2))};
}

std::pair<Chromosome, Chromosome> one_point_crossover(const Chromosome& a, const Chromosome& b,
                                                      double prob, RngStream& rng) {
  if (!rng.bernoulli(prob)) {
    return {a, b};
  }
  const auto cut = static_cast<std::size_t>(rng.uniform_int(1, static_cast<std::int64_t>(a.size()) - 1));
  return crossover_at(a, b, cut);
}

Chromosome mutate_random_reset(const Chromosome& c, double pm, RngStream& rng) {
  std::vector<int> genes(c.genes().begin(), c.genes().end());
  for (auto& g : genes) {
    if (rng.bernoulli(pm)) {
      g = static_cast<int>(rng.uniform_int(1, kOutputLevels));
    }
  }
  return Chromosome(std::move(genes));
}

EvolveResult evolve(std::vector<Chromosome>& population, const FitnessFunction& fitness,
                    const EvolverConfig& config, RngStream& rng) {
  if (population.empty()) {
    throw DomainError("evolve needs a non-empty population");
  }
  const std::size_t n = population.size();
  const auto k = std::min<std::size_t>(static_cast<std::size_t>(config.tournament_size), n);

  std::vector<double> scores(n);
  for (std::size_t i = 0; i < n; ++i) {
    scores[i] = fitness(population[i]);
  }
  std::size_t lead = argmin(scores);
  EvolveResult result{population[lead], scores[lead], {scores[lead]}};

  std::vector<Chromosome> next;
  std::vector<double> next_scores;
  for (int gen = 0; gen < config.generations; ++gen) {
    next.clear();
    next_scores.clear();
    next.push_back(population[lead]);
    next_scores.push_back(scores[lead]);
    while (next.size() < n) {
      const auto& p1 = population[tournament_select(scores, k, rng)];
      const auto& p2 = population[tournament_select(scores, k, rng)];
      auto [c1, c2] = one_point_crossover(p1, p2, config.crossover_prob, rng);
      next.push_back(mutate_random_reset(c1, config.mutation_prob, rng));
      next_scores.push_back(fitness(next.back()));
      if (next.size() < n) {
        next.push_back(mutate_random_reset(c2, config.mutation_prob, rng));
        next_scores.push_back(fitness(next.back()));
      }
    }
    population.swap(next);
    scores.swap(next_scores);
    lead = argmin(scores);
    if (scores[lead] < result.best_fitness) {
      result.best = population[lead];
      result.best_fitness = scores[lead];
    }
    result.generation_best.push_back(scores[lead]);
  }
  return result;
}

double weighted_fitness(const EventCounts& counts, const EvolverConfig& config) noexcept {
  return config.weight_handoff * counts.handoffs + config.weight_cut * counts.cuts;
}

double fitness(const Chromosome& candidate, const HistoryWindow& window, const FuzzySystem& system,
               const EvolverConfig& config) {
  const RuleThresholdSource source(system, candidate.to_rule_base());
  return weighted_fitness(run_window(window, source, config.fitness_mode), config);
}

EvolveResult evolve(std::vector<Chromosome>& population, const HistoryWindow& window,
                    const FuzzySystem& system, const EvolverConfig& config, RngStream& rng) {
  if (window.empty()) {
    throw EmptyHistory();
  }
  CentroidCache centroids;
  std::map<Chromosome, double> seen;
  const FitnessFunction memoized = [&](const Chromosome& c) {
    if (auto it = seen.find(c); it != seen.end()) {
      return it->second;
    }
    const RuleThresholdSource source(system, c.to_rule_base(), &centroids);
    const double value = weighted_fitness(run_window(window, source, config.fitness_mode), config);
    seen.emplace(c, value);
    return value;
  };
  return evolve(population, memoized, config, rng);
}

}  // namespace evohandoff
