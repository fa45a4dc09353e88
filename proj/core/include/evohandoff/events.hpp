#pragma once

#include <optional>
#include <string_view>
#include <vector>

namespace evohandoff {

enum class EventKind { HandoffInitiated, HandoffCompleted, ConnectionCut, Connected, Blocked };

std::string_view to_string(EventKind kind) noexcept;
/// Inverse of to_string; std::nullopt for unknown names.
std::optional<EventKind> parse_event_kind(std::string_view name) noexcept;

/// One state-machine event. Station fields carry 1-based station ids:
/// old_bs is the station being left (or cut), new_bs the one being joined.
struct Event {
  int time = 0;
  int mt_id = 0;
  EventKind kind = EventKind::Connected;
  std::optional<int> old_bs;
  std::optional<int> new_bs;

  bool operator==(const Event&) const = default;
};

/// Append-only, time-ordered.
using EventLog = std::vector<Event>;

}  // namespace evohandoff
