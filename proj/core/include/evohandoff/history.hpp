#pragma once

#include <cstddef>
#include <deque>

#include "evohandoff/chromosome.hpp"
#include "evohandoff/world.hpp"

namespace evohandoff {

/// The last `capacity` recorded time units, oldest first.
class HistoryWindow {
 public:
  explicit HistoryWindow(std::size_t capacity = 4);

  void push(UnitRecord record);
  void clear() noexcept { units_.clear(); }

  std::size_t capacity() const noexcept { return capacity_; }
  std::size_t size() const noexcept { return units_.size(); }
  bool empty() const noexcept { return units_.empty(); }
  bool warm() const noexcept { return units_.size() == capacity_; }

  const UnitRecord& operator[](std::size_t i) const { return units_[i]; }
  const UnitRecord& front() const { return units_.front(); }
  const UnitRecord& back() const { return units_.back(); }
  auto begin() const noexcept { return units_.begin(); }
  auto end() const noexcept { return units_.end(); }

 private:
  std::size_t capacity_;
  std::deque<UnitRecord> units_;
};

struct EventCounts {
  int handoffs = 0;  ///< HandoffInitiated
  int cuts = 0;      ///< ConnectionCut, fuzzy or forced

  bool operator==(const EventCounts&) const = default;
};

EventCounts count_events(std::span<const Event> events) noexcept;

/// Replays the window with `rules` driving every terminal's decisions.
///
/// Each terminal starts from its recorded state at the first unit and is
/// stepped through the recorded inputs. Channel occupancy is the recorded
/// occupancy that terminal saw, corrected only for its own (replayed versus
/// recorded) channel holdings; everyone else is frozen.
/// Throws EmptyHistory on an empty window.
EventCounts replay_window(const HistoryWindow& window, const ThresholdSource& rules);

/// Re-runs the whole world from the window's first snapshot with `rules`
/// driving every terminal, so interactions between terminals are live.
EventCounts resimulate_window(const HistoryWindow& window, const ThresholdSource& rules);

}  // namespace evohandoff
