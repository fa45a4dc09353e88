#include "evohandoff/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "evohandoff/export.hpp"
#include "evohandoff/history.hpp"

namespace evohandoff {

namespace {

UnitTrace snapshot(const World& world) {
  UnitTrace t;
  t.time = world.time();
  for (const auto& mt : world.terminals()) {
    t.terminals.push_back({mt.id, mt.position, mt.link, mt.speed, mt.energy, mt.odometer});
  }
  for (const auto& bs : world.stations()) {
    t.occupied.push_back(bs.occupied);
  }
  return t;
}

}  // namespace

RunResult run(const ExperimentConfig& config, PolicyKind policy_kind, std::uint64_t seed,
              const RunOptions& options) {
  World world(config.world, seed);
  HandoffPolicy policy(policy_kind, config.fuzzy, config.rules, config.evolver, seed);
  HistoryWindow history(static_cast<std::size_t>(config.evolver.window));
  const bool evolving = uses_evolution(policy_kind) && config.evolver.invocation_period.has_value();

  RunResult result;
  result.policy = policy_kind;
  result.seed = seed;
  result.initial_terminals.assign(world.terminals().begin(), world.terminals().end());

  std::vector<UnitTrace> trace;
  trace.push_back(snapshot(world));
  for (int t = 1; t <= config.world.total_time; ++t) {
    UnitRecord record;
    const bool want_record = evolving || options.record_units;
    auto events = world.step(policy, want_record ? &record : nullptr);
    result.events.insert(result.events.end(), events.begin(), events.end());
    trace.push_back(snapshot(world));
    if (options.record_units) {
      result.units.push_back(record);
    }
    if (evolving) {
      history.push(std::move(record));
      policy.on_epoch(history, world.time());
    }
  }
  result.metrics = compute_metrics(trace, result.events);
  result.evolution.assign(policy.evolution_log().begin(), policy.evolution_log().end());
  if (options.record_trace) {
    result.trace = std::move(trace);
  }
  return result;
}

RunMetrics compute_metrics(std::span<const UnitTrace> trace, const EventLog& events) {
  RunMetrics m;
  m.handoffs = static_cast<int>(std::count_if(events.begin(), events.end(), [](const Event& e) {
    return e.kind == EventKind::HandoffInitiated;
  }));
  if (trace.size() < 2 || trace.front().terminals.empty()) {
    return m;
  }
  const std::size_t terminals = trace.front().terminals.size();
  const std::size_t units = trace.size() - 1;
  std::size_t connected = 0;
  for (std::size_t u = 1; u < trace.size(); ++u) {
    for (const auto& mt : trace[u].terminals) {
      if (mt.link.status != LinkStatus::Disconnect) {
        ++connected;
      }
    }
  }
  m.connection_time_pct = 100.0 * static_cast<double>(connected) / static_cast<double>(terminals * units);
  double consumed = 0.0;
  for (const auto& mt : trace.back().terminals) {
    consumed += (kInitialEnergy - mt.energy) / kInitialEnergy;
  }
  m.energy_wastage_pct = 100.0 * consumed / static_cast<double>(terminals);
  return m;
}

Aggregate aggregate(std::span<const double> samples) {
  if (samples.empty()) {
    return {};
  }
  Aggregate a{samples.front(), samples.front(), 0.0};
  double sum = 0.0;
  for (double s : samples) {
    a.max = std::max(a.max, s);
    a.min = std::min(a.min, s);
    sum += s;
  }
  a.avg = std::clamp(sum / static_cast<double>(samples.size()), a.min, a.max);
  return a;
}

const PolicyReport* MetricsReport::find(PolicyKind policy) const noexcept {
  for (const auto& row : rows) {
    if (row.policy == policy) {
      return &row;
    }
  }
  return nullptr;
}

Comparison compare(const ExperimentConfig& config, const RunOptions& options) {
  config.validate();
  const std::size_t seeds = config.seeds.size();
  const std::size_t jobs = config.policies.size() * seeds;

  Comparison out;
  out.runs.resize(jobs);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&] {
    for (std::size_t j = next++; j < jobs; j = next++) {
      try {
        out.runs[j] = run(config, config.policies[j / seeds], config.seeds[j % seeds], options);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) {
          failure = std::current_exception();
        }
      }
    }
  };
  unsigned workers = config.threads != 0 ? config.threads : std::max(1U, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, jobs));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < workers; ++i) {
      pool.emplace_back(worker);
    }
  }
  if (failure) {
    std::rethrow_exception(failure);
  }

  for (std::size_t p = 0; p < config.policies.size(); ++p) {
    std::vector<double> handoffs;
    std::vector<double> connection;
    std::vector<double> energy;
    for (std::size_t s = 0; s < seeds; ++s) {
      const auto& m = out.runs[p * seeds + s].metrics;
      handoffs.push_back(m.handoffs);
      connection.push_back(m.connection_time_pct);
      energy.push_back(m.energy_wastage_pct);
    }
    out.report.rows.push_back(
        {config.policies[p], aggregate(handoffs), aggregate(connection), aggregate(energy)});
  }

  if (!config.output_dir.empty()) {
    write_outputs(out, config);
  }
  return out;
}

}  // namespace evohandoff
