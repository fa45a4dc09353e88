#include "evohandoff/config.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>
#include <string>

#include "evohandoff/errors.hpp"
#include "json.hpp"

namespace evohandoff {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    if (std::none_of(allowed.begin(), allowed.end(),
                     [&](const char* k) { return item.key() == k; })) {
      throw ConfigError(where + item.key(), "unknown key");
    }
  }
}

const json& require_object(const json& j, const std::string& key) {
  if (!j.is_object()) {
    throw ConfigError(key, "expected an object");
  }
  return j;
}

template <typename T>
T get_as(const json& j, const std::string& key) {
  try {
    return j.get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(key, std::string("wrong type: ") + e.what());
  }
}

template <typename T>
void read(const json& obj, const char* name, const std::string& prefix, T& out) {
  if (auto it = obj.find(name); it != obj.end()) {
    out = get_as<T>(*it, prefix + name);
  }
}

std::pair<double, double> read_pair(const json& j, const std::string& key) {
  const auto v = get_as<std::vector<double>>(j, key);
  if (v.size() != 2) {
    throw ConfigError(key, "expected two numbers");
  }
  return {v[0], v[1]};
}

WorldConfig parse_world(const json& j) {
  const std::string p = "world.";
  require_object(j, "world");
  reject_unknown(j, p,
                 {"arena", "stations", "mt_count", "total_time", "s_th", "s_min", "epsilon", "dwell",
                  "eq2_verbatim", "initial"});
  WorldConfig w;
  if (auto it = j.find("arena"); it != j.end()) {
    std::tie(w.width, w.height) = read_pair(*it, p + "arena");
  }
  if (auto it = j.find("stations"); it != j.end()) {
    if (!it->is_array()) {
      throw ConfigError(p + "stations", "expected an array");
    }
    w.stations.clear();
    for (std::size_t i = 0; i < it->size(); ++i) {
      const auto key = p + "stations[" + std::to_string(i) + "]";
      const json& s = require_object((*it)[i], key);
      reject_unknown(s, key + ".", {"center", "radius", "capacity"});
      if (!s.contains("center") || !s.contains("radius") || !s.contains("capacity")) {
        throw ConfigError(key, "station needs center, radius and capacity");
      }
      StationSpec spec;
      std::tie(spec.center.x, spec.center.y) = read_pair(s["center"], key + ".center");
      spec.radius = get_as<double>(s["radius"], key + ".radius");
      spec.capacity = get_as<int>(s["capacity"], key + ".capacity");
      w.stations.push_back(spec);
    }
  }
  read(j, "mt_count", p, w.mt_count);
  read(j, "total_time", p, w.total_time);
  read(j, "s_th", p, w.s_th);
  read(j, "s_min", p, w.s_min);
  read(j, "epsilon", p, w.epsilon);
  read(j, "dwell", p, w.dwell);
  bool verbatim = false;
  read(j, "eq2_verbatim", p, verbatim);
  w.velocity_mode = verbatim ? VelocityMode::Verbatim : VelocityMode::Derivative;
  if (auto it = j.find("initial"); it != j.end()) {
    const std::string q = p + "initial.";
    require_object(*it, p + "initial");
    reject_unknown(*it, q, {"steady_probability", "steady_speed", "accel_distance"});
    read(*it, "steady_probability", q, w.initial.steady_probability);
    if (auto s = it->find("steady_speed"); s != it->end()) {
      std::tie(w.initial.steady_speed_min, w.initial.steady_speed_max) = read_pair(*s, q + "steady_speed");
    }
    if (auto s = it->find("accel_distance"); s != it->end()) {
      std::tie(w.initial.accel_distance_min, w.initial.accel_distance_max) =
          read_pair(*s, q + "accel_distance");
    }
  }
  return w;
}

LinguisticVariable parse_variable(const json& j, const std::string& key, const LinguisticVariable& fallback) {
  require_object(j, key);
  reject_unknown(j, key + ".", {"universe", "terms"});
  double lo = fallback.lo();
  double hi = fallback.hi();
  if (auto it = j.find("universe"); it != j.end()) {
    std::tie(lo, hi) = read_pair(*it, key + ".universe");
  }
  std::vector<MembershipFunction> terms(fallback.terms().begin(), fallback.terms().end());
  if (auto it = j.find("terms"); it != j.end()) {
    if (!it->is_array()) {
      throw ConfigError(key + ".terms", "expected an array");
    }
    terms.clear();
    for (std::size_t i = 0; i < it->size(); ++i) {
      const auto tkey = key + ".terms[" + std::to_string(i) + "]";
      const json& t = require_object((*it)[i], tkey);
      reject_unknown(t, tkey + ".", {"label", "shape", "points"});
      const auto label = t.contains("label") ? get_as<std::string>(t["label"], tkey + ".label")
                                             : std::string("term") + std::to_string(i);
      if (!t.contains("points")) {
        throw ConfigError(tkey + ".points", "missing");
      }
      const auto pts = get_as<std::vector<double>>(t["points"], tkey + ".points");
      std::string shape = pts.size() == 4 ? "trapezoidal" : "triangular";
      if (t.contains("shape")) {
        shape = get_as<std::string>(t["shape"], tkey + ".shape");
      }
      try {
        if (shape == "triangular" && pts.size() == 3) {
          terms.push_back(MembershipFunction::triangular(label, pts[0], pts[1], pts[2]));
        } else if (shape == "trapezoidal" && pts.size() == 4) {
          terms.push_back(MembershipFunction::trapezoidal(label, pts[0], pts[1], pts[2], pts[3]));
        } else {
          throw ConfigError(tkey, "triangular needs 3 points, trapezoidal 4");
        }
      } catch (const ValidationError& e) {
        throw ConfigError(tkey + ".points", e.what());
      }
    }
  }
  try {
    return LinguisticVariable(fallback.name(), lo, hi, std::move(terms));
  } catch (const ValidationError& e) {
    throw ConfigError(key, e.what());
  }
}

void parse_fuzzy(const json& j, ExperimentConfig& cfg) {
  const std::string p = "fuzzy.";
  require_object(j, "fuzzy");
  reject_unknown(j, p, {"resolution", "velocity", "distance", "channels", "output", "rules"});
  auto velocity = FuzzySystem::default_velocity();
  auto dist = FuzzySystem::default_distance();
  auto channels = FuzzySystem::default_channels();
  auto output = FuzzySystem::default_output();
  int resolution = kDefaultResolution;
  read(j, "resolution", p, resolution);
  if (auto it = j.find("velocity"); it != j.end()) velocity = parse_variable(*it, p + "velocity", velocity);
  if (auto it = j.find("distance"); it != j.end()) dist = parse_variable(*it, p + "distance", dist);
  if (auto it = j.find("channels"); it != j.end()) channels = parse_variable(*it, p + "channels", channels);
  if (auto it = j.find("output"); it != j.end()) output = parse_variable(*it, p + "output", output);
  try {
    cfg.fuzzy = std::make_shared<const FuzzySystem>(std::move(velocity), std::move(dist),
                                                    std::move(channels), std::move(output), resolution);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("fuzzy", e.what());
  }
  if (auto it = j.find("rules"); it != j.end()) {
    auto genes = get_as<std::vector<int>>(*it, p + "rules");
    if (genes.size() != RuleBase::cell_count(3)) {
      throw ConfigError(p + "rules", "expected 27 consequents");
    }
    try {
      cfg.rules = RuleBase(3, std::move(genes));
    } catch (const ValidationError& e) {
      throw ConfigError(p + "rules", e.what());
    }
  }
}

EvolverConfig parse_evolver(const json& j) {
  const std::string p = "evolver.";
  require_object(j, "evolver");
  reject_unknown(j, p,
                 {"population_size", "crossover_prob", "mutation_prob", "tournament_size", "generations",
                  "invocation_period", "window", "weight_handoff", "weight_cut", "fitness_mode"});
  EvolverConfig e;
  read(j, "population_size", p, e.population_size);
  read(j, "crossover_prob", p, e.crossover_prob);
  read(j, "mutation_prob", p, e.mutation_prob);
  read(j, "tournament_size", p, e.tournament_size);
  read(j, "generations", p, e.generations);
  if (auto it = j.find("invocation_period"); it != j.end()) {
    if (it->is_null()) {
      e.invocation_period.reset();
    } else {
      e.invocation_period = get_as<int>(*it, p + "invocation_period");
    }
  }
  read(j, "window", p, e.window);
  read(j, "weight_handoff", p, e.weight_handoff);
  read(j, "weight_cut", p, e.weight_cut);
  if (auto it = j.find("fitness_mode"); it != j.end()) {
    const auto mode = get_as<std::string>(*it, p + "fitness_mode");
    if (mode == "replay") {
      e.fitness_mode = FitnessMode::Replay;
    } else if (mode == "resimulate") {
      e.fitness_mode = FitnessMode::Resimulate;
    } else {
      throw ConfigError(p + "fitness_mode", "expected \"replay\" or \"resimulate\"");
    }
  }
  return e;
}

void parse_experiment(const json& j, ExperimentConfig& cfg) {
  const std::string p = "experiment.";
  require_object(j, "experiment");
  reject_unknown(j, p, {"policies", "seeds", "runs", "output_dir", "format", "write_states", "threads"});
  if (auto it = j.find("policies"); it != j.end()) {
    cfg.policies.clear();
    for (const auto& name : get_as<std::vector<std::string>>(*it, p + "policies")) {
      if (name == "all") {
        cfg.policies.assign(kAllPolicies.begin(), kAllPolicies.end());
        continue;
      }
      auto kind = parse_policy_kind(name);
      if (!kind) {
        throw ConfigError(p + "policies", "unknown policy '" + name + "'");
      }
      cfg.policies.push_back(*kind);
    }
  }
  const bool has_seeds = j.contains("seeds");
  const bool has_runs = j.contains("runs");
  if (has_runs) {
    cfg.runs = get_as<int>(j["runs"], p + "runs");
  }
  if (has_seeds) {
    cfg.seeds = get_as<std::vector<std::uint64_t>>(j["seeds"], p + "seeds");
    if (!has_runs) {
      cfg.runs = static_cast<int>(cfg.seeds.size());
    }
  } else if (has_runs) {
    cfg.seeds.clear();
    for (int i = 1; i <= cfg.runs; ++i) {
      cfg.seeds.push_back(static_cast<std::uint64_t>(i));
    }
  }
  if (auto it = j.find("output_dir"); it != j.end()) {
    cfg.output_dir = get_as<std::string>(*it, p + "output_dir");
  }
  if (auto it = j.find("format"); it != j.end()) {
    auto fmt = parse_output_format(get_as<std::string>(*it, p + "format"));
    if (!fmt) {
      throw ConfigError(p + "format", "expected \"csv\" or \"json\"");
    }
    cfg.format = *fmt;
  }
  read(j, "write_states", p, cfg.write_states);
  read(j, "threads", p, cfg.threads);
}

}  // namespace

std::string_view to_string(OutputFormat format) noexcept {
  return format == OutputFormat::Csv ? "csv" : "json";
}

std::optional<OutputFormat> parse_output_format(std::string_view name) noexcept {
  if (name == "csv") {
    return OutputFormat::Csv;
  }
  if (name == "json") {
    return OutputFormat::Json;
  }
  return std::nullopt;
}

void ExperimentConfig::validate() const {
  world.validate();
  evolver.validate();
  if (!fuzzy) {
    throw ConfigError("fuzzy", "missing fuzzy system");
  }
  if (policies.empty()) {
    throw ConfigError("experiment.policies", "at least one policy is required");
  }
  if (seeds.empty()) {
    throw ConfigError("experiment.seeds", "at least one seed is required");
  }
  if (runs != static_cast<int>(seeds.size())) {
    throw ConfigError("experiment.runs", "runs must equal the number of listed seeds");
  }
  if (rules.arity() != 3) {
    throw ConfigError("fuzzy.rules", "expected 27 consequents");
  }
}

ExperimentConfig parse_config(std::string_view text) {
  const bool blank = std::all_of(text.begin(), text.end(),
                                 [](unsigned char c) { return std::isspace(c) != 0; });
  json root = json::object();
  if (!blank) {
    try {
      root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
      throw ConfigError("<document>", e.what());
    }
  }
  if (!root.is_object()) {
    throw ConfigError("<document>", "top level must be an object");
  }
  reject_unknown(root, "", {"world", "fuzzy", "evolver", "experiment"});
  ExperimentConfig cfg;
  if (auto it = root.find("world"); it != root.end()) cfg.world = parse_world(*it);
  if (auto it = root.find("fuzzy"); it != root.end()) parse_fuzzy(*it, cfg);
  if (auto it = root.find("evolver"); it != root.end()) cfg.evolver = parse_evolver(*it);
  if (auto it = root.find("experiment"); it != root.end()) parse_experiment(*it, cfg);
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open config file '" + path.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace evohandoff
