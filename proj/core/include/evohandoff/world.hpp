#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "evohandoff/events.hpp"
#include "evohandoff/kinematics.hpp"
#include "evohandoff/rng.hpp"

namespace evohandoff {

inline constexpr double kInitialEnergy = 100.0;

struct BaseStation {
  int id = 0;  ///< 1-based, matching the station table order
  Vec2 center;
  double radius = 0.0;
  int capacity = 0;
  int occupied = 0;

  bool operator==(const BaseStation&) const = default;
};

enum class LinkStatus { Connect, Disconnect, Handover };

/// Connection part of a terminal's state.
///
/// Connect: serving set, target unset. Handover: both set and
/// dwell_remaining in 1..dwell. Disconnect: neither set.
struct LinkState {
  LinkStatus status = LinkStatus::Disconnect;
  std::optional<int> serving;
  std::optional<int> target;
  int dwell_remaining = 0;

  bool holds(int station_id) const noexcept {
    return serving == station_id || target == station_id;
  }
  bool operator==(const LinkState&) const = default;
};

struct MobileTerminal {
  int id = 0;
  Vec2 position;
  Vec2 direction{1.0, 0.0};
  MotionPlan motion;
  double speed = 0.0;     ///< instantaneous speed fed to the fuzzy velocity input
  double odometer = 0.0;  ///< path length travelled so far
  double energy = kInitialEnergy;
  LinkState link;

  double heading() const noexcept;
  bool operator==(const MobileTerminal&) const = default;
};

struct StationSpec {
  Vec2 center;
  double radius = 0.0;
  int capacity = 0;

  bool operator==(const StationSpec&) const = default;
};

/// Randomized starting conditions of the terminals.
struct InitialConditions {
  double steady_probability = 0.5;
  double steady_speed_min = 5.0;
  double steady_speed_max = 30.0;
  double accel_distance_min = 1500.0;
  double accel_distance_max = 4500.0;

  bool operator==(const InitialConditions&) const = default;
};

struct WorldConfig {
  double width = 6000.0;
  double height = 6000.0;
  std::vector<StationSpec> stations = default_stations();
  int mt_count = 50;
  int total_time = 75;
  double s_th = 0.45;
  double s_min = 0.20;
  double epsilon = 0.1;
  int dwell = 2;
  VelocityMode velocity_mode = VelocityMode::Derivative;
  InitialConditions initial;

  /// The seven-station heterogeneous layout.
  static std::vector<StationSpec> default_stations();
  /// Throws ConfigError naming the first violated key.
  void validate() const;

  bool operator==(const WorldConfig&) const = default;
};

/// Decision thresholds of the connection state machine.
struct Thresholds {
  double s_th = 0.45;
  double s_min = 0.20;
  int dwell = 2;
};

/// What a terminal can observe about one station when it decides.
struct StationView {
  int id = 0;
  double boundary = 0.0;  ///< radius minus distance to center; negative outside
  double radius = 1.0;
  int capacity = 0;
  int occupied = 0;

  double dist_norm() const noexcept;
  double chan_norm() const noexcept;
  bool covers() const noexcept { return boundary >= 0.0; }
  bool has_free_channel() const noexcept { return occupied < capacity; }
};

/// Crisp "RSS threshold" signal for a (terminal, station) pair.
class ThresholdSource {
 public:
  virtual ~ThresholdSource() = default;
  virtual double rss_threshold(double velocity, double dist_norm, double chan_norm) const = 0;
};

/// Signed distance to the coverage circle: radius - |position - center|.
double distance_to_boundary(Vec2 position, const BaseStation& station) noexcept;
double distance_to_boundary(const MobileTerminal& mt, const BaseStation& station) noexcept;
/// clamp(boundary / radius, 0, 1).
double normalized_distance(Vec2 position, const BaseStation& station) noexcept;
/// (capacity - occupied) / capacity.
double free_channels_norm(const BaseStation& station) noexcept;

/// Energy drawn in one time unit: sum over serving stations of d / r + epsilon.
/// Zero for a disconnected terminal; both stations count during handover.
double energy_wastage(Vec2 position, const LinkState& link, std::span<const BaseStation> stations,
                      double epsilon);

/// Best station to move to: not `exclude`, strictly inside coverage, at
/// least one free channel; maximizes dist_norm, ties to the lowest id.
std::optional<int> select_target_bs(std::span<const StationView> views,
                                    std::optional<int> exclude = std::nullopt);
std::optional<int> select_target_bs(const MobileTerminal& mt, std::span<const BaseStation> stations);

struct Transition {
  LinkState next;
  std::optional<Event> event;  ///< time and mt_id left at 0 for the caller
};

/// One unit of the connection state machine for one terminal.
///
/// Connect:    outside serving coverage -> ConnectionCut (forced);
///             value < s_min -> ConnectionCut;
///             s_min <= value < s_th and a target exists -> HandoffInitiated;
///             otherwise unchanged.
/// Handover:   outside both stations -> ConnectionCut (forced);
///             else dwell counts down, and at zero -> HandoffCompleted.
/// Disconnect: best free covering station with value > s_min -> Connected;
///             covered but every covering station full -> Blocked.
Transition apply_transition(const LinkState& link, double velocity, std::span<const StationView> views,
                           const Thresholds& thresholds, const ThresholdSource& source);

/// Per-terminal inputs captured at the moment it decided within a unit.
struct DecisionRecord {
  LinkState before;
  double velocity = 0.0;
  std::vector<double> boundary;  ///< per station, indexed by id - 1
  std::vector<int> occupied;     ///< per station, as seen by this terminal

  bool operator==(const DecisionRecord&) const = default;
};

struct UnitRecord;

/// Discrete-time world: stations, terminals, clock.
///
/// Single-threaded; terminals are updated in ascending id order and later
/// terminals see the channel changes made by earlier ones in the same unit.
class World {
 public:
  /// Empty placeholder (no stations, no terminals).
  World() = default;
  /// Random terminals drawn from `config.initial` with a stream seeded by `seed`.
  World(WorldConfig config, std::uint64_t seed);
  World(WorldConfig config, std::vector<MobileTerminal> terminals);

  const WorldConfig& config() const noexcept { return config_; }
  int time() const noexcept { return time_; }
  std::span<const BaseStation> stations() const noexcept { return stations_; }
  std::span<const MobileTerminal> terminals() const noexcept { return terminals_; }
  const BaseStation& station(int id) const { return stations_.at(static_cast<std::size_t>(id - 1)); }
  Thresholds thresholds() const noexcept;

  std::vector<StationView> views_at(Vec2 position) const;

  /// Advances one time unit. When `record` is given it is filled with the
  /// pre-step world and every terminal's decision inputs.
  std::vector<Event> step(const ThresholdSource& source, UnitRecord* record = nullptr);

  bool operator==(const World&) const = default;

 private:
  void advance(MobileTerminal& mt) const;
  void rebind(const LinkState& before, const LinkState& after);

  WorldConfig config_;
  std::vector<BaseStation> stations_;
  std::vector<MobileTerminal> terminals_;
  int time_ = 0;
};

/// Everything one time unit needs for replay: the world before the step and
/// every terminal's decision inputs (ascending id).
struct UnitRecord {
  int time = 0;  ///< the unit being stepped (world time after the step)
  World start;
  std::vector<DecisionRecord> decisions;
};

/// Draws `config.mt_count` terminals; every terminal consumes the same draws in a fixed order.
std::vector<MobileTerminal> spawn_terminals(const WorldConfig& config, RngStream& rng);

inline std::vector<Event> step_world(World& world, const ThresholdSource& source,
                                     UnitRecord* record = nullptr) {
  return world.step(source, record);
}

}  // namespace evohandoff
