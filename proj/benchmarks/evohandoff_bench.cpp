#include <benchmark/benchmark.h>

#include "evohandoff/evolver.hpp"
#include "evohandoff/experiment.hpp"
#include "evohandoff/rule_source.hpp"

using namespace evohandoff;

namespace {

HistoryWindow sample_window() {
  const auto system = FuzzySystem::defaults();
  const RuleThresholdSource src(system, RuleBase::initial_table());
  World w(WorldConfig{}, 1);
  for (int t = 0; t < 20; ++t) w.step(src);
  HistoryWindow window(4);
  for (int u = 0; u < 4; ++u) {
    UnitRecord rec;
    w.step(src, &rec);
    window.push(std::move(rec));
  }
  return window;
}

}  // namespace

static void BM_DefuzzifyCentroid(benchmark::State& state) {
  const auto out = FuzzySystem::default_output();
  FuzzyActivation act;
  act.strengths = {0.1, 0.6, 0.3, 0.0, 0.2};
  for (auto _ : state) {
    benchmark::DoNotOptimize(defuzzify_centroid(act, out, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_DefuzzifyCentroid)->Arg(1001)->Arg(10001);

static void BM_ComputeRssThreshold(benchmark::State& state) {
  const auto system = FuzzySystem::defaults();
  const auto rules = RuleBase::initial_table();
  double v = 0.0;
  for (auto _ : state) {
    v = v > 30 ? 0 : v + 0.37;
    benchmark::DoNotOptimize(compute_rss_threshold(rules, system, v, 0.4, 0.6));
  }
}
BENCHMARK(BM_ComputeRssThreshold);

static void BM_WindowFitness(benchmark::State& state) {
  const auto system = FuzzySystem::defaults();
  const auto window = sample_window();
  EvolverConfig cfg;
  cfg.fitness_mode = state.range(0) == 0 ? FitnessMode::Replay : FitnessMode::Resimulate;
  const auto seed = Chromosome::from_rule_base(RuleBase::initial_table());
  for (auto _ : state) {
    benchmark::DoNotOptimize(fitness(seed, window, system, cfg));
  }
}
BENCHMARK(BM_WindowFitness)->Arg(0)->Arg(1);

static void BM_Evolve(benchmark::State& state) {
  const auto system = FuzzySystem::defaults();
  const auto window = sample_window();
  const EvolverConfig cfg;
  const auto seed = Chromosome::from_rule_base(RuleBase::initial_table());
  for (auto _ : state) {
    RngStream rng(3);
    auto pop = init_population(seed, cfg, rng);
    benchmark::DoNotOptimize(evolve(pop, window, system, cfg, rng));
  }
}
BENCHMARK(BM_Evolve)->Unit(benchmark::kMillisecond);

static void BM_WorldStep(benchmark::State& state) {
  const auto system = FuzzySystem::defaults();
  CentroidCache cache;
  const RuleThresholdSource src(system, RuleBase::initial_table(), &cache);
  for (auto _ : state) {
    World w(WorldConfig{}, 5);
    for (int t = 0; t < 75; ++t) benchmark::DoNotOptimize(w.step(src));
  }
}
BENCHMARK(BM_WorldStep)->Unit(benchmark::kMillisecond);

static void BM_FullRun(benchmark::State& state) {
  ExperimentConfig cfg;
  const auto kind = kAllPolicies[static_cast<std::size_t>(state.range(0))];
  state.SetLabel(std::string(to_string(kind)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(run(cfg, kind, 1));
  }
}
BENCHMARK(BM_FullRun)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
