#include "evohandoff/events.hpp"

#include <array>
#include <utility>

namespace evohandoff {

namespace {

constexpr std::array<std::pair<EventKind, std::string_view>, 5> kNames{{
    {EventKind::HandoffInitiated, "HandoffInitiated"},
    {EventKind::HandoffCompleted, "HandoffCompleted"},
    {EventKind::ConnectionCut, "ConnectionCut"},
    {EventKind::Connected, "Connected"},
    {EventKind::Blocked, "Blocked"},
}};

}  // namespace

std::string_view to_string(EventKind kind) noexcept {
  for (const auto& [k, name] : kNames) {
    if (k == kind) {
      return name;
    }
  }
  return "Unknown";
}

std::optional<EventKind> parse_event_kind(std::string_view name) noexcept {
  for (const auto& [k, n] : kNames) {
    if (n == name) {
      return k;
    }
  }
  return std::nullopt;
}

}  // namespace evohandoff
