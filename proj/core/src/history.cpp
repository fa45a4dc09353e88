#include "evohandoff/history.hpp"

#include <algorithm>

#include "evohandoff/errors.hpp"

namespace evohandoff {

HistoryWindow::HistoryWindow(std::size_t capacity) : capacity_(capacity) {
  if (capacity_ == 0) {
    throw DomainError("history window capacity must be positive");
  }
}

void HistoryWindow::push(UnitRecord record) {
  units_.push_back(std::move(record));
  while (units_.size() > capacity_) {
    units_.pop_front();
  }
}

EventCounts count_events(std::span<const Event> events) noexcept {
  EventCounts counts;
  for (const auto& e : events) {
    if (e.kind == EventKind::HandoffInitiated) {
      ++counts.handoffs;
    } else if (e.kind == EventKind::ConnectionCut) {
      ++counts.cuts;
    }
  }
  return counts;
}

EventCounts replay_window(const HistoryWindow& window, const ThresholdSource& rules) {
  if (window.empty()) {
    throw EmptyHistory();
  }
  const World& origin = window.front().start;
  const auto stations = origin.stations();
  const Thresholds th = origin.thresholds();
  const std::size_t terminals = window.front().decisions.size();

  EventCounts counts;
  std::vector<StationView> views(stations.size());
  for (std::size_t m = 0; m < terminals; ++m) {
    LinkState link = window.front().decisions[m].before;
    for (const auto& unit : window) {
      const DecisionRecord& rec = unit.decisions[m];
      for (std::size_t s = 0; s < stations.size(); ++s) {
        const auto& bs = stations[s];
        int occupied = rec.occupied[s] - (rec.before.holds(bs.id) ? 1 : 0) + (link.holds(bs.id) ? 1 : 0);
        occupied = std::clamp(occupied, 0, bs.capacity);
        views[s] = {bs.id, rec.boundary[s], bs.radius, bs.capacity, occupied};
      }
      const Transition tr = apply_transition(link, rec.velocity, views, th, rules);
      if (tr.event) {
        if (tr.event->kind == EventKind::HandoffInitiated) {
          ++counts.handoffs;
        } else if (tr.event->kind == EventKind::ConnectionCut) {
          ++counts.cuts;
        }
      }
      link = tr.next;
    }
  }
  return counts;
}

EventCounts resimulate_window(const HistoryWindow& window, const ThresholdSource& rules) {
  if (window.empty()) {
    throw EmptyHistory();
  }
  World world = window.front().start;
  EventCounts counts;
  for (std::size_t u = 0; u < window.size(); ++u) {
    const auto events = world.step(rules);
    const auto c = count_events(events);
    counts.handoffs += c.handoffs;
    counts.cuts += c.cuts;
  }
  return counts;
}

}  // namespace evohandoff
