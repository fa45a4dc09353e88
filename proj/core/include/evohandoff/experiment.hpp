#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "evohandoff/config.hpp"
#include "evohandoff/events.hpp"
#include "evohandoff/policy.hpp"
#include "evohandoff/world.hpp"

namespace evohandoff {

struct RunMetrics {
  int handoffs = 0;                   ///< HandoffInitiated events
  double connection_time_pct = 0.0;   ///< share of terminal-units in Connect or Handover
  double energy_wastage_pct = 0.0;    ///< mean consumed share of the initial energy

  bool operator==(const RunMetrics&) const = default;
};

/// One terminal at the end of a time unit.
struct TerminalSnapshot {
  int mt_id = 0;
  Vec2 position;
  LinkState link;
  double speed = 0.0;
  double energy = 0.0;
  double odometer = 0.0;

  bool operator==(const TerminalSnapshot&) const = default;
};

/// World state at the end of one time unit.
struct UnitTrace {
  int time = 0;
  std::vector<TerminalSnapshot> terminals;
  std::vector<int> occupied;  ///< per station, indexed by id - 1
};

struct RunOptions {
  bool record_trace = false;  ///< keep one UnitTrace per unit (plus t = 0)
  bool record_units = false;  ///< keep every UnitRecord (replay substrate)
};

struct RunResult {
  PolicyKind policy = PolicyKind::FLS;
  std::uint64_t seed = 0;
  RunMetrics metrics;
  EventLog events;
  std::vector<MobileTerminal> initial_terminals;
  std::vector<UnitTrace> trace;
  std::vector<UnitRecord> units;
  std::vector<EpochRecord> evolution;
};

/// Builds the world from `seed`, steps it for world.total_time units under
/// `policy` (calling on_epoch after each unit) and computes the metrics.
RunResult run(const ExperimentConfig& config, PolicyKind policy, std::uint64_t seed,
              const RunOptions& options = {});

RunMetrics compute_metrics(std::span<const UnitTrace> trace, const EventLog& events);

struct Aggregate {
  double max = 0.0;
  double min = 0.0;
  double avg = 0.0;

  bool operator==(const Aggregate&) const = default;
};

Aggregate aggregate(std::span<const double> samples);

struct PolicyReport {
  PolicyKind policy = PolicyKind::FLS;
  Aggregate handoffs;
  Aggregate connection_time_pct;
  Aggregate energy_wastage_pct;

  bool operator==(const PolicyReport&) const = default;
};

struct MetricsReport {
  std::vector<PolicyReport> rows;

  const PolicyReport* find(PolicyKind policy) const noexcept;
  bool operator==(const MetricsReport&) const = default;
};

struct Comparison {
  MetricsReport report;
  std::vector<RunResult> runs;  ///< policy-major, then seed, in config order
};

/// Runs every configured policy over the shared seed list and aggregates.
/// Runs execute on up to config.threads workers; results do not depend on it.
/// When config.output_dir is non-empty the report, event logs and GA logs
/// are written there after all runs finish.
Comparison compare(const ExperimentConfig& config, const RunOptions& options = {});

/// Writes report.<fmt>, events_<policy>_seed<seed>.<fmt>, evolution logs for
/// GA policies and, when requested, state traces.
void write_outputs(const Comparison& comparison, const ExperimentConfig& config);

}  // namespace evohandoff
