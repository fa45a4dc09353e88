#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "evohandoff/config.hpp"
#include "evohandoff/events.hpp"
#include "evohandoff/experiment.hpp"

namespace evohandoff {

// Layouts (docs/formats.md):
//   report  CSV  policy,metric,max,min,avg
//   events  CSV  t,mt_id,event,old_bs,new_bs   (absent station ids are empty)
// JSON carries the same fields as an array of objects under "rows" / "events".
// Reals use the shortest representation that round-trips exactly.

std::string format_report(const MetricsReport& report, OutputFormat format);
/// Throws ConfigError on malformed input.
MetricsReport parse_report(std::string_view text, OutputFormat format);

std::string format_events(std::span<const Event> events, OutputFormat format);
EventLog parse_events(std::string_view text, OutputFormat format);

/// t,mt_id,x,y,state,serving,target,dwell,speed,energy,odometer
std::string format_trace(std::span<const UnitTrace> trace, OutputFormat format);
/// time,incumbent_fitness,installed_fitness,chromosome (genes space-separated)
std::string format_evolution(std::span<const EpochRecord> log, OutputFormat format);

/// Throws IoError when the file cannot be written.
void write_text(const std::filesystem::path& path, std::string_view text);
void export_report(const MetricsReport& report, OutputFormat format, const std::filesystem::path& path);
void export_events(std::span<const Event> events, OutputFormat format, const std::filesystem::path& path);

std::string format_real(double value);

}  // namespace evohandoff
