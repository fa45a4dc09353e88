#include "evohandoff/export.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <system_error>

#include "evohandoff/errors.hpp"
#include "json.hpp"

namespace evohandoff {

namespace {

using nlohmann::json;

constexpr std::array<std::string_view, 3> kMetricNames{"handoffs", "connection_time_pct",
                                                       "energy_wastage_pct"};

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) {
      break;
    }
    start = pos + 1;
  }
  return out;
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  for (auto line : split(text, '\n')) {
    if (!line.empty() && line.back() == '\r') {
      line.remove_suffix(1);
    }
    if (!line.empty()) {
      out.push_back(line);
    }
  }
  return out;
}

double parse_real(std::string_view s, const char* what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ConfigError(what, "not a number: '" + std::string(s) + "'");
  }
  return v;
}

int parse_int(std::string_view s, const char* what) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ConfigError(what, "not an integer: '" + std::string(s) + "'");
  }
  return v;
}

std::string optional_id(std::optional<int> id) {
  return id ? std::to_string(*id) : std::string();
}

json optional_json(std::optional<int> id) {
  return id ? json(*id) : json(nullptr);
}

std::string_view status_name(LinkStatus s) {
  switch (s) {
    case LinkStatus::Connect:
      return "Connect";
    case LinkStatus::Handover:
      return "Handover";
    case LinkStatus::Disconnect:
      return "Disconnect";
  }
  return "?";
}

std::array<const Aggregate*, 3> cells(const PolicyReport& row) {
  return {&row.handoffs, &row.connection_time_pct, &row.energy_wastage_pct};
}

PolicyReport& row_for(MetricsReport& report, PolicyKind kind) {
  for (auto& r : report.rows) {
    if (r.policy == kind) {
      return r;
    }
  }
  report.rows.push_back({kind, {}, {}, {}});
  return report.rows.back();
}

Aggregate& cell_for(PolicyReport& row, std::string_view metric) {
  if (metric == kMetricNames[0]) return row.handoffs;
  if (metric == kMetricNames[1]) return row.connection_time_pct;
  if (metric == kMetricNames[2]) return row.energy_wastage_pct;
  throw ConfigError("metric", "unknown metric '" + std::string(metric) + "'");
}

PolicyKind policy_from(std::string_view name) {
  auto kind = parse_policy_kind(name);
  if (!kind) {
    throw ConfigError("policy", "unknown policy '" + std::string(name) + "'");
  }
  return *kind;
}

EventKind event_from(std::string_view name) {
  auto kind = parse_event_kind(name);
  if (!kind) {
    throw ConfigError("event", "unknown event '" + std::string(name) + "'");
  }
  return *kind;
}

std::optional<int> id_from(std::string_view s) {
  if (s.empty()) {
    return std::nullopt;
  }
  return parse_int(s, "bs");
}

}  // namespace

std::string format_real(double value) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ec == std::errc{} ? ptr : buf.data());
}

std::string format_report(const MetricsReport& report, OutputFormat format) {
  if (format == OutputFormat::Json) {
    json rows = json::array();
    for (const auto& row : report.rows) {
      const auto c = cells(row);
      for (std::size_t i = 0; i < c.size(); ++i) {
        rows.push_back({{"policy", std::string(to_string(row.policy))},
                        {"metric", std::string(kMetricNames[i])},
                        {"max", c[i]->max},
                        {"min", c[i]->min},
                        {"avg", c[i]->avg}});
      }
    }
    return json{{"version", 1}, {"rows", rows}}.dump(2) + "\n";
  }
  std::string out = "policy,metric,max,min,avg\n";
  for (const auto& row : report.rows) {
    const auto c = cells(row);
    for (std::size_t i = 0; i < c.size(); ++i) {
      out += std::string(to_string(row.policy)) + ',' + std::string(kMetricNames[i]) + ',' +
             format_real(c[i]->max) + ',' + format_real(c[i]->min) + ',' + format_real(c[i]->avg) + '\n';
    }
  }
  return out;
}

MetricsReport parse_report(std::string_view text, OutputFormat format) {
  MetricsReport report;
  if (format == OutputFormat::Json) {
    json root;
    try {
      root = json::parse(text.begin(), text.end());
      for (const auto& r : root.at("rows")) {
        auto& row = row_for(report, policy_from(r.at("policy").get<std::string>()));
        auto& cell = cell_for(row, r.at("metric").get<std::string>());
        cell = {r.at("max").get<double>(), r.at("min").get<double>(), r.at("avg").get<double>()};
      }
    } catch (const json::exception& e) {
      throw ConfigError("report", e.what());
    }
    return report;
  }
  const auto lines = lines_of(text);
  if (lines.empty() || lines.front() != "policy,metric,max,min,avg") {
    throw ConfigError("report", "missing CSV header");
  }
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split(lines[i], ',');
    if (f.size() != 5) {
      throw ConfigError("report", "expected 5 fields");
    }
    auto& row = row_for(report, policy_from(f[0]));
    cell_for(row, f[1]) = {parse_real(f[2], "max"), parse_real(f[3], "min"), parse_real(f[4], "avg")};
  }
  return report;
}

std::string format_events(std::span<const Event> events, OutputFormat format) {
  if (format == OutputFormat::Json) {
    json arr = json::array();
    for (const auto& e : events) {
      arr.push_back({{"t", e.time},
                     {"mt_id", e.mt_id},
                     {"event", std::string(to_string(e.kind))},
                     {"old_bs", optional_json(e.old_bs)},
                     {"new_bs", optional_json(e.new_bs)}});
    }
    return json{{"version", 1}, {"events", arr}}.dump(2) + "\n";
  }
  std::string out = "t,mt_id,event,old_bs,new_bs\n";
  for (const auto& e : events) {
    out += std::to_string(e.time) + ',' + std::to_string(e.mt_id) + ',' + std::string(to_string(e.kind)) +
           ',' + optional_id(e.old_bs) + ',' + optional_id(e.new_bs) + '\n';
  }
  return out;
}

EventLog parse_events(std::string_view text, OutputFormat format) {
  EventLog log;
  if (format == OutputFormat::Json) {
    try {
      const json root = json::parse(text.begin(), text.end());
      for (const auto& e : root.at("events")) {
        Event ev;
        ev.time = e.at("t").get<int>();
        ev.mt_id = e.at("mt_id").get<int>();
        ev.kind = event_from(e.at("event").get<std::string>());
        if (!e.at("old_bs").is_null()) ev.old_bs = e.at("old_bs").get<int>();
        if (!e.at("new_bs").is_null()) ev.new_bs = e.at("new_bs").get<int>();
        log.push_back(ev);
      }
    } catch (const json::exception& e) {
      throw ConfigError("events", e.what());
    }
    return log;
  }
  const auto lines = lines_of(text);
  if (lines.empty() || lines.front() != "t,mt_id,event,old_bs,new_bs") {
    throw ConfigError("events", "missing CSV header");
  }
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split(lines[i], ',');
    if (f.size() != 5) {
      throw ConfigError("events", "expected 5 fields");
    }
    log.push_back({parse_int(f[0], "t"), parse_int(f[1], "mt_id"), event_from(f[2]), id_from(f[3]),
                   id_from(f[4])});
  }
  return log;
}

std::string format_trace(std::span<const UnitTrace> trace, OutputFormat format) {
  if (format == OutputFormat::Json) {
    json arr = json::array();
    for (const auto& unit : trace) {
      for (const auto& mt : unit.terminals) {
        arr.push_back({{"t", unit.time},
                       {"mt_id", mt.mt_id},
                       {"x", mt.position.x},
                       {"y", mt.position.y},
                       {"state", std::string(status_name(mt.link.status))},
                       {"serving", optional_json(mt.link.serving)},
                       {"target", optional_json(mt.link.target)},
                       {"dwell", mt.link.dwell_remaining},
                       {"speed", mt.speed},
                       {"energy", mt.energy},
                       {"odometer", mt.odometer}});
      }
    }
    return json{{"version", 1}, {"states", arr}}.dump(2) + "\n";
  }
  std::string out = "t,mt_id,x,y,state,serving,target,dwell,speed,energy,odometer\n";
  for (const auto& unit : trace) {
    for (const auto& mt : unit.terminals) {
      out += std::to_string(unit.time) + ',' + std::to_string(mt.mt_id) + ',' + format_real(mt.position.x) +
             ',' + format_real(mt.position.y) + ',' + std::string(status_name(mt.link.status)) + ',' +
             optional_id(mt.link.serving) + ',' + optional_id(mt.link.target) + ',' +
             std::to_string(mt.link.dwell_remaining) + ',' + format_real(mt.speed) + ',' +
             format_real(mt.energy) + ',' + format_real(mt.odometer) + '\n';
    }
  }
  return out;
}

std::string format_evolution(std::span<const EpochRecord> log, OutputFormat format) {
  if (format == OutputFormat::Json) {
    json arr = json::array();
    for (const auto& r : log) {
      arr.push_back({{"time", r.time},
                     {"incumbent_fitness", r.incumbent_fitness},
                     {"installed_fitness", r.installed_fitness},
                     {"chromosome", std::vector<int>(r.installed.genes().begin(), r.installed.genes().end())}});
    }
    return json{{"version", 1}, {"epochs", arr}}.dump(2) + "\n";
  }
  std::string out = "time,incumbent_fitness,installed_fitness,chromosome\n";
  for (const auto& r : log) {
    out += std::to_string(r.time) + ',' + format_real(r.incumbent_fitness) + ',' +
           format_real(r.installed_fitness) + ',';
    for (std::size_t i = 0; i < r.installed.size(); ++i) {
      out += (i == 0 ? "" : " ") + std::to_string(r.installed[i]);
    }
    out += '\n';
  }
  return out;
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open '" + path.string() + "' for writing");
  }
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) {
    throw IoError("failed writing '" + path.string() + "'");
  }
}

void export_report(const MetricsReport& report, OutputFormat format, const std::filesystem::path& path) {
  write_text(path, format_report(report, format));
}

void export_events(std::span<const Event> events, OutputFormat format, const std::filesystem::path& path) {
  write_text(path, format_events(events, format));
}

void write_outputs(const Comparison& comparison, const ExperimentConfig& config) {
  std::error_code ec;
  std::filesystem::create_directories(config.output_dir, ec);
  if (ec) {
    throw IoError("cannot create output directory '" + config.output_dir.string() + "': " + ec.message());
  }
  const std::string ext = "." + std::string(to_string(config.format));
  export_report(comparison.report, config.format, config.output_dir / ("report" + ext));
  for (const auto& r : comparison.runs) {
    std::string policy(to_string(r.policy));
    std::transform(policy.begin(), policy.end(), policy.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    const std::string stem = policy + "_seed" + std::to_string(r.seed);
    export_events(r.events, config.format, config.output_dir / ("events_" + stem + ext));
    if (uses_evolution(r.policy)) {
      write_text(config.output_dir / ("evolution_" + stem + ext), format_evolution(r.evolution, config.format));
    }
    if (config.write_states && !r.trace.empty()) {
      write_text(config.output_dir / ("states_" + stem + ext), format_trace(r.trace, config.format));
    }
  }
}

}  // namespace evohandoff
