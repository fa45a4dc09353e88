#include "evohandoff/world.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "evohandoff/errors.hpp"

namespace evohandoff {

namespace {

const StationView* find_view(std::span<const StationView> views, int id) noexcept {
  for (const auto& v : views) {
    if (v.id == id) {
      return &v;
    }
  }
  return nullptr;
}

Event make_event(EventKind kind, std::optional<int> old_bs, std::optional<int> new_bs) {
  Event e;
  e.kind = kind;
  e.old_bs = old_bs;
  e.new_bs = new_bs;
  return e;
}

}  // namespace

double MobileTerminal::heading() const noexcept {
  double h = std::atan2(direction.y, direction.x);
  if (h < 0.0) {
    h += 2.0 * std::numbers::pi;
  }
  return h;
}

std::vector<StationSpec> WorldConfig::default_stations() {
  return {
      {{2598, 500}, 1400, 6},  {{866, 500}, 1000, 4},   {{3464, 2000}, 1200, 5},
      {{1732, 2000}, 800, 3},  {{1, 2000}, 900, 3},     {{2598, 3500}, 600, 2},
      {{866, 3500}, 1300, 5},
  };
}

void WorldConfig::validate() const {
  if (!(width > 0.0) || !(height > 0.0)) {
    throw ConfigError("world.arena", "arena dimensions must be positive");
  }
  if (stations.empty()) {
    throw ConfigError("world.stations", "at least one station is required");
  }
  const double extent = std::max(width, height);
  for (std::size_t i = 0; i < stations.size(); ++i) {
    const auto key = "world.stations[" + std::to_string(i) + "]";
    if (!(stations[i].radius > 0.0) || stations[i].radius > extent) {
      throw ConfigError(key + ".radius", "radius must be in (0, arena extent]");
    }
    if (stations[i].capacity < 1) {
      throw ConfigError(key + ".capacity", "capacity must be at least 1");
    }
  }
  if (mt_count < 0) {
    throw ConfigError("world.mt_count", "must be non-negative");
  }
  if (total_time < 1) {
    throw ConfigError("world.total_time", "must be at least 1");
  }
  if (!(s_min >= 0.0 && s_th <= 1.0)) {
    throw ConfigError("world.s_min", "thresholds must lie in [0, 1]");
  }
  if (!(s_min < s_th)) {
    throw ConfigError("world.s_min", "S_min < S_th");
  }
  if (!(epsilon >= 0.0)) {
    throw ConfigError("world.epsilon", "must be non-negative");
  }
  if (dwell < 1) {
    throw ConfigError("world.dwell", "must be at least 1");
  }
  const auto& ic = initial;
  if (!(ic.steady_probability >= 0.0 && ic.steady_probability <= 1.0)) {
    throw ConfigError("world.initial.steady_probability", "must be in [0, 1]");
  }
  if (!(ic.steady_speed_min >= 0.0 && ic.steady_speed_min <= ic.steady_speed_max)) {
    throw ConfigError("world.initial.steady_speed", "requires 0 <= min <= max");
  }
  if (!(ic.accel_distance_min > 0.0 && ic.accel_distance_min <= ic.accel_distance_max)) {
    throw ConfigError("world.initial.accel_distance", "requires 0 < min <= max");
  }
}

double StationView::dist_norm() const noexcept {
  return std::clamp(boundary / radius, 0.0, 1.0);
}

double StationView::chan_norm() const noexcept {
  return std::clamp(static_cast<double>(capacity - occupied) / capacity, 0.0, 1.0);
}

double distance_to_boundary(Vec2 position, const BaseStation& station) noexcept {
  return station.radius - distance(position, station.center);
}

double distance_to_boundary(const MobileTerminal& mt, const BaseStation& station) noexcept {
  return distance_to_boundary(mt.position, station);
}

double normalized_distance(Vec2 position, const BaseStation& station) noexcept {
  return std::clamp(distance_to_boundary(position, station) / station.radius, 0.0, 1.0);
}

double free_channels_norm(const BaseStation& station) noexcept {
  return static_cast<double>(station.capacity - station.occupied) / station.capacity;
}

double energy_wastage(Vec2 position, const LinkState& link, std::span<const BaseStation> stations,
                      double epsilon) {
  if (link.status == LinkStatus::Disconnect) {
    return 0.0;
  }
  const auto draw = [&](int id) {
    const auto& bs = stations[static_cast<std::size_t>(id - 1)];
    return distance(position, bs.center) / bs.radius + epsilon;
  };
  double total = draw(*link.serving);
  if (link.status == LinkStatus::Handover) {
    total += draw(*link.target);
  }
  return total;
}

std::optional<int> select_target_bs(std::span<const StationView> views, std::optional<int> exclude) {
  std::optional<int> best;
  double best_norm = -1.0;
  for (const auto& v : views) {
    if (v.id == exclude || !(v.boundary > 0.0) || !v.has_free_channel()) {
      continue;
    }
    const double n = v.dist_norm();
    if (n > best_norm || (n == best_norm && v.id < *best)) {
      best = v.id;
      best_norm = n;
    }
  }
  return best;
}

std::optional<int> select_target_bs(const MobileTerminal& mt, std::span<const BaseStation> stations) {
  std::vector<StationView> views;
  views.reserve(stations.size());
  for (const auto& bs : stations) {
    views.push_back({bs.id, distance_to_boundary(mt, bs), bs.radius, bs.capacity, bs.occupied});
  }
  return select_target_bs(views, mt.link.serving);
}

Transition apply_transition(const LinkState& link, double velocity, std::span<const StationView> views,
                           const Thresholds& thresholds, const ThresholdSource& source) {
  Transition out{link, std::nullopt};
  const auto evaluate = [&](const StationView& v) {
    return source.rss_threshold(velocity, v.dist_norm(), v.chan_norm());
  };
  const auto covered = [&](std::optional<int> id) {
    const StationView* v = id ? find_view(views, *id) : nullptr;
    return v != nullptr && v->covers();
  };

  switch (link.status) {
    case LinkStatus::Connect: {
      const StationView* serving = find_view(views, *link.serving);
      if (serving == nullptr || !serving->covers()) {
        out.next = LinkState{};
        out.event = make_event(EventKind::ConnectionCut, link.serving, std::nullopt);
        break;
      }
      const double value = evaluate(*serving);
      if (value < thresholds.s_min) {
        out.next = LinkState{};
        out.event = make_event(EventKind::ConnectionCut, link.serving, std::nullopt);
      } else if (value < thresholds.s_th) {
        if (auto target = select_target_bs(views, link.serving)) {
          out.next = LinkState{LinkStatus::Handover, link.serving, target, thresholds.dwell};
          out.event = make_event(EventKind::HandoffInitiated, link.serving, target);
        }
      }
      break;
    }
    case LinkStatus::Handover: {
      if (!covered(link.serving) && !covered(link.target)) {
        out.next = LinkState{};
        out.event = make_event(EventKind::ConnectionCut, link.serving, link.target);
        break;
      }
      out.next.dwell_remaining = link.dwell_remaining - 1;
      if (out.next.dwell_remaining <= 0) {
        out.next = LinkState{LinkStatus::Connect, link.target, std::nullopt, 0};
        out.event = make_event(EventKind::HandoffCompleted, link.serving, link.target);
      }
      break;
    }
    case LinkStatus::Disconnect: {
      if (auto candidate = select_target_bs(views)) {
        const double value = evaluate(*find_view(views, *candidate));
        if (value > thresholds.s_min) {
          out.next = LinkState{LinkStatus::Connect, candidate, std::nullopt, 0};
          out.event = make_event(EventKind::Connected, std::nullopt, candidate);
        }
      } else if (std::any_of(views.begin(), views.end(),
                             [](const StationView& v) { return v.boundary > 0.0; })) {
        out.event = make_event(EventKind::Blocked, std::nullopt, std::nullopt);
      }
      break;
    }
  }
  return out;
}

std::vector<MobileTerminal> spawn_terminals(const WorldConfig& config, RngStream& rng) {
  const auto& ic = config.initial;
  std::vector<MobileTerminal> out;
  out.reserve(static_cast<std::size_t>(config.mt_count));
  for (int i = 0; i < config.mt_count; ++i) {
    const double x = rng.uniform(0.0, config.width);
    const double y = rng.uniform(0.0, config.height);
    const double heading = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const bool steady = rng.bernoulli(ic.steady_probability);
    const double speed = rng.uniform(ic.steady_speed_min, ic.steady_speed_max);
    const double accel_distance = rng.uniform(ic.accel_distance_min, ic.accel_distance_max);

    MobileTerminal mt;
    mt.id = i;
    mt.position = {x, y};
    mt.direction = {std::cos(heading), std::sin(heading)};
    mt.motion = steady ? MotionPlan::steady(speed)
                       : MotionPlan::accelerated(accel_distance, config.total_time);
    mt.speed = mt.motion.speed_at(0.0, config.velocity_mode);
    out.push_back(mt);
  }
  return out;
}

namespace {

std::vector<MobileTerminal> spawn_validated(const WorldConfig& config, std::uint64_t seed) {
  config.validate();
  RngStream rng(seed);
  return spawn_terminals(config, rng);
}

}  // namespace

World::World(WorldConfig config, std::uint64_t seed)
    : World(config, spawn_validated(config, seed)) {}

World::World(WorldConfig config, std::vector<MobileTerminal> terminals)
    : config_(std::move(config)), terminals_(std::move(terminals)) {
  config_.validate();
  for (std::size_t i = 0; i < config_.stations.size(); ++i) {
    const auto& s = config_.stations[i];
    stations_.push_back({static_cast<int>(i) + 1, s.center, s.radius, s.capacity, 0});
  }
  for (const auto& mt : terminals_) {
    for (auto id : {mt.link.serving, mt.link.target}) {
      if (!id) {
        continue;
      }
      if (*id < 1 || *id > static_cast<int>(stations_.size())) {
        throw ValidationError("terminal bound to unknown station id " + std::to_string(*id));
      }
      auto& bs = stations_[static_cast<std::size_t>(*id - 1)];
      if (++bs.occupied > bs.capacity) {
        throw ValidationError("initial bindings exceed capacity of station " + std::to_string(*id));
      }
    }
  }
}

Thresholds World::thresholds() const noexcept {
  return {config_.s_th, config_.s_min, config_.dwell};
}

std::vector<StationView> World::views_at(Vec2 position) const {
  std::vector<StationView> views;
  views.reserve(stations_.size());
  for (const auto& bs : stations_) {
    views.push_back({bs.id, distance_to_boundary(position, bs), bs.radius, bs.capacity, bs.occupied});
  }
  return views;
}

void World::advance(MobileTerminal& mt) const {
  const double t = time_;
  const double path = mt.motion.displacement_at(t) - mt.motion.displacement_at(t - 1.0);
  const Pose pose = move_with_reflection({mt.position, mt.direction}, path, config_.width, config_.height);
  mt.position = pose.position;
  mt.direction = pose.direction;
  mt.odometer += path;
  mt.speed = mt.motion.speed_at(t, config_.velocity_mode);
}

void World::rebind(const LinkState& before, const LinkState& after) {
  for (auto& bs : stations_) {
    const bool had = before.holds(bs.id);
    const bool has = after.holds(bs.id);
    if (had && !has) {
      --bs.occupied;
    } else if (!had && has) {
      ++bs.occupied;
    }
  }
}

std::vector<Event> World::step(const ThresholdSource& source, UnitRecord* record) {
  if (record != nullptr) {
    record->start = *this;
    record->decisions.clear();
    record->decisions.reserve(terminals_.size());
  }
  ++time_;
  if (record != nullptr) {
    record->time = time_;
  }
  const Thresholds th = thresholds();
  std::vector<Event> events;
  for (auto& mt : terminals_) {
    advance(mt);
    const auto views = views_at(mt.position);
    if (record != nullptr) {
      DecisionRecord dr;
      dr.before = mt.link;
      dr.velocity = mt.speed;
      for (const auto& v : views) {
        dr.boundary.push_back(v.boundary);
        dr.occupied.push_back(v.occupied);
      }
      record->decisions.push_back(std::move(dr));
    }
    Transition tr = apply_transition(mt.link, mt.speed, views, th, source);
    rebind(mt.link, tr.next);
    mt.link = tr.next;
    if (tr.event) {
      tr.event->time = time_;
      tr.event->mt_id = mt.id;
      events.push_back(*tr.event);
    }
    const double ew = energy_wastage(mt.position, mt.link, stations_, config_.epsilon);
    mt.energy = std::max(0.0, mt.energy - ew);
  }
  return events;
}

}  // namespace evohandoff
