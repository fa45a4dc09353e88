#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "evohandoff/config.hpp"
#include "evohandoff/evolver.hpp"
#include "evohandoff/experiment.hpp"
#include "evohandoff/rule_source.hpp"
#include "oracles.hpp"

using namespace evohandoff;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(const char* id, bool ok, const std::string& detail) {
  std::printf("%s %s: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// ---------------------------------------------------------------- AC1

void ac1() {
  constexpr long kSamples = 1'000'000;
  RngStream rng(0xAC1);
  std::vector<std::array<double, 5>> acts;
  while (acts.size() < 1000) {
    std::array<double, 5> s{};
    for (auto& x : s) x = rng.bernoulli(0.4) ? 0.0 : rng.uniform01();
    if (std::any_of(s.begin(), s.end(), [](double x) { return x > 0; })) acts.push_back(s);
  }

  const auto t0 = Clock::now();
  const auto system = FuzzySystem::defaults();
  std::vector<double> impl;
  impl.reserve(acts.size());
  for (const auto& s : acts) {
    FuzzyActivation a;
    a.strengths = s;
    impl.push_back(defuzzify_centroid(a, system.output(), 1001));
  }
  const double impl_time = seconds_since(t0);

  std::vector<double> xs(kSamples);
  std::vector<std::array<double, 5>> mu(kSamples);
  for (long k = 0; k < kSamples; ++k) {
    xs[static_cast<std::size_t>(k)] = (static_cast<double>(k) + 0.5) / kSamples;
    for (std::size_t j = 0; j < 5; ++j) mu[static_cast<std::size_t>(k)][j] = oracle::kOutputTris[j].at(xs[static_cast<std::size_t>(k)]);
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < acts.size(); ++i) {
    const auto& s = acts[i];
    double moment = 0.0, area = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
      double m = 0.0;
      for (std::size_t j = 0; j < 5; ++j) m = std::max(m, std::min(s[j], mu[k][j]));
      moment += xs[k] * m;
      area += m;
    }
    worst = std::max(worst, std::abs(impl[i] - moment / area));
  }
  report("AC1", worst <= 1e-3 && impl_time < 5.0,
         fmt("defuzzification vs 1e6-sample oracle over 1000 activations: max |err| = %.3g (tol 1e-3), runtime %.3f s (limit 5 s)",
             worst, impl_time));
}

// ---------------------------------------------------------------- AC2

bool same(const Transition& got, const oracle::Outcome& want) {
  if (!(got.next == want.next)) return false;
  if (got.event.has_value() != want.event.has_value()) return false;
  return !got.event || got.event->kind == *want.event;
}

void ac2(const Comparison& cmp) {
  const Thresholds th{};
  const std::array<double, 5> values{0.1, 0.2, 0.3, 0.45, 0.8};
  const std::array<double, 3> coverage{-100.0, 0.0, 300.0};
  std::vector<LinkState> states{
      {},
      {LinkStatus::Connect, 1, std::nullopt, 0},
      {LinkStatus::Handover, 1, 2, 2},
      {LinkStatus::Handover, 1, 2, 1},
  };
  long cases = 0, mismatches = 0;
  std::map<std::string, int> seen;
  for (const auto& s : states) {
    for (double v : values) {
      for (int mask = 0; mask < 216; ++mask) {
        std::vector<StationView> views;
        int m = mask;
        for (int id = 1; id <= 3; ++id) {
          const double b = coverage[static_cast<std::size_t>(m % 3)];
          const bool full = (m / 3) % 2 == 1;
          m /= 6;
          const int cap = 2;
          int occ = full ? cap : (s.holds(id) ? 1 : 0);
          views.push_back({id, b, 1000, cap, occ});
        }
        const auto got = apply_transition(s, 10, views, th, oracle::ConstantSource(v));
        const auto want = oracle::expected_transition(s, v, views, th.s_min, th.s_th, th.dwell);
        ++cases;
        if (!same(got, want)) ++mismatches;
        if (want.event) ++seen[std::string(to_string(*want.event))];
      }
    }
  }
  const bool all_rows = seen.count("HandoffInitiated") && seen.count("ConnectionCut") && seen.count("Connected") &&
                        seen.count("HandoffCompleted") && seen.count("Blocked");

  // Every initiation ends in completion exactly dwell units later unless a
  // forced cut (both stations lost) intervenes.
  long initiated = 0, completed = 0, forced = 0, broken = 0;
  for (const auto& r : cmp.runs) {
    std::map<int, std::vector<const Event*>> per_mt;
    for (const auto& e : r.events) per_mt[e.mt_id].push_back(&e);
    for (const auto& [id, evs] : per_mt) {
      for (std::size_t i = 0; i < evs.size(); ++i) {
        if (evs[i]->kind != EventKind::HandoffInitiated) continue;
        ++initiated;
        const Event* next = i + 1 < evs.size() ? evs[i + 1] : nullptr;
        if (next == nullptr) {
          if (evs[i]->time + th.dwell <= 75) ++broken;
        } else if (next->kind == EventKind::HandoffCompleted && next->time == evs[i]->time + th.dwell &&
                   next->new_bs == evs[i]->new_bs) {
          ++completed;
        } else if (next->kind == EventKind::ConnectionCut && next->old_bs && next->new_bs &&
                   next->time <= evs[i]->time + th.dwell) {
          ++forced;
        } else {
          ++broken;
        }
      }
    }
  }
  report("AC2", mismatches == 0 && all_rows && broken == 0,
         fmt("%ld enumerated transitions, %ld mismatches, every transition kind exercised: %s; "
             "%ld initiations -> %ld completed after 2 units, %ld forced cuts, %ld violations",
             cases, mismatches, all_rows ? "yes" : "no", initiated, completed, forced, broken));
}

// ---------------------------------------------------------------- windows

HistoryWindow window_from(const RunResult& r, std::size_t start, std::size_t width) {
  HistoryWindow w(width);
  for (std::size_t u = start; u < start + width; ++u) w.push(r.units[u]);
  return w;
}

// ---------------------------------------------------------------- AC3

bool valid(const Chromosome& c) {
  return c.size() == 27 && std::all_of(c.genes().begin(), c.genes().end(), [](int g) { return g >= 1 && g <= 5; });
}

void ac3(const ExperimentConfig& cfg) {
  RngStream rng(0xAC3);
  auto random_chromosome = [&] {
    std::vector<int> g(27);
    for (auto& x : g) x = static_cast<int>(rng.uniform_int(1, 5));
    return Chromosome(g);
  };
  long invalid = 0;
  for (int i = 0; i < 10000; ++i) {
    const auto a = random_chromosome();
    const auto b = random_chromosome();
    auto [c, d] = one_point_crossover(a, b, 0.9, rng);
    if (!valid(c) || !valid(d)) ++invalid;
    if (!valid(mutate_random_reset(c, 0.1, rng)) || !valid(mutate_random_reset(d, 1.0, rng))) ++invalid;
  }

  constexpr int kTrials = 100000;
  const auto seed = Chromosome::from_rule_base(RuleBase::initial_table());
  long changed = 0;
  for (int i = 0; i < kTrials; ++i) {
    const auto m = mutate_random_reset(seed, 0.1, rng);
    for (std::size_t g = 0; g < 27; ++g) changed += m[g] != seed[g] ? 1 : 0;
  }
  const double p = 0.1 * 0.8;
  const double mean = static_cast<double>(changed) / kTrials;
  const double sigma = std::sqrt(27 * p * (1 - p) / kTrials);
  const bool rate_ok = std::abs(mean - 27 * p) <= 3 * sigma;

  int monotone = 0;
  RngStream pick(0xAC33);
  for (int w = 0; w < 100; ++w) {
    const auto s = static_cast<std::uint64_t>(pick.uniform_int(1, 1000));
    const auto r = run(cfg, PolicyKind::FLS, s, {.record_units = true});
    const auto start = static_cast<std::size_t>(pick.uniform_int(0, static_cast<std::int64_t>(r.units.size()) - 4));
    const auto window = window_from(r, start, 4);
    auto pop = init_population(seed, cfg.evolver, pick);
    const auto res = evolve(pop, window, *cfg.fuzzy, cfg.evolver, pick);
    bool ok = true;
    for (std::size_t g = 1; g < res.generation_best.size(); ++g) ok &= res.generation_best[g] <= res.generation_best[g - 1];
    monotone += ok ? 1 : 0;
  }
  report("AC3", invalid == 0 && rate_ok && monotone == 100,
         fmt("%ld invalid chromosomes over 1e4 operator applications; mean changed genes %.4f vs %.2f (3 sigma = %.4f); "
             "best fitness non-increasing on %d/100 windows",
             invalid, mean, 27 * p, 3 * sigma, monotone));
}

// ---------------------------------------------------------------- AC4

void ac4(const ExperimentConfig& cfg) {
  RngStream pick(0xAC4);
  const auto seed = Chromosome::from_rule_base(RuleBase::initial_table());
  auto resim_cfg = cfg.evolver;
  resim_cfg.fitness_mode = FitnessMode::Resimulate;
  int equal = 0;
  long total_events = 0;
  for (int w = 0; w < 100; ++w) {
    const auto s = static_cast<std::uint64_t>(pick.uniform_int(1, 100000));
    const auto r = run(cfg, PolicyKind::FLS, s, {.record_units = true});
    const auto start = static_cast<std::size_t>(pick.uniform_int(0, static_cast<std::int64_t>(r.units.size()) - 4));
    const auto window = window_from(r, start, 4);
    const int lo = window.front().time;
    const int hi = window.back().time;
    int logged = 0;
    for (const auto& e : r.events) {
      if (e.time >= lo && e.time <= hi &&
          (e.kind == EventKind::HandoffInitiated || e.kind == EventKind::ConnectionCut)) {
        ++logged;
      }
    }
    total_events += logged;
    const double replay = fitness(seed, window, *cfg.fuzzy, cfg.evolver);
    const double resim = fitness(seed, window, *cfg.fuzzy, resim_cfg);
    const auto o = oracle::replay_counts(window, seed.to_rule_base(), *cfg.fuzzy);
    if (replay == logged && resim == logged && o.handoffs + o.cuts == logged) ++equal;
  }
  report("AC4", equal == 100,
         fmt("seed-chromosome fitness equals logged handoffs + cuts on %d/100 random windows (%ld events in total)",
             equal, total_events));
}

// ---------------------------------------------------------------- AC5

void ac5(const Comparison& cmp, double elapsed) {
  const auto* fls = cmp.report.find(PolicyKind::FLS);
  const auto* gfls = cmp.report.find(PolicyKind::GFLS);
  const auto* flah = cmp.report.find(PolicyKind::FLAH);
  const auto* gflah = cmp.report.find(PolicyKind::GFLAH);
  const bool h1 = gfls->handoffs.avg < fls->handoffs.avg;
  const bool h2 = gflah->handoffs.avg < flah->handoffs.avg;
  const bool c1 = gfls->connection_time_pct.avg >= fls->connection_time_pct.avg;
  report("AC5", h1 && h2 && c1 && elapsed < 60.0,
         fmt("mean handoffs GFLS %.1f < FLS %.1f: %s; GFLAH %.1f < FLAH %.1f: %s; "
             "connection %% GFLS %.2f >= FLS %.2f: %s; 4 policies x 10 seeds in %.1f s (limit 60 s)",
             gfls->handoffs.avg, fls->handoffs.avg, h1 ? "yes" : "no", gflah->handoffs.avg, flah->handoffs.avg,
             h2 ? "yes" : "no", gfls->connection_time_pct.avg, fls->connection_time_pct.avg, c1 ? "yes" : "no",
             elapsed));
  for (const auto& row : cmp.report.rows) {
    std::printf("     %-5s handoffs avg %6.1f [%g, %g]  connection %% avg %6.2f  energy %% avg %6.2f\n",
                std::string(to_string(row.policy)).c_str(), row.handoffs.avg, row.handoffs.min, row.handoffs.max,
                row.connection_time_pct.avg, row.energy_wastage_pct.avg);
  }
}

// ---------------------------------------------------------------- AC6

std::map<std::string, std::string> read_tree(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    std::ifstream in(entry.path(), std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    files[entry.path().filename().string()] = ss.str();
  }
  return files;
}

void ac6(ExperimentConfig cfg, const fs::path& first) {
  const fs::path second = first.parent_path() / "second";
  fs::remove_all(second);
  cfg.output_dir = second;
  compare(cfg);
  const auto a = read_tree(first);
  const auto b = read_tree(second);
  std::size_t csv = 0;
  for (const auto& [name, _] : a) csv += name.ends_with(".csv") ? 1 : 0;
  report("AC6", a == b && csv > 0,
         fmt("two compare executions wrote %zu CSV files each; byte-identical: %s", csv, a == b ? "yes" : "no"));
}

// ---------------------------------------------------------------- AC7

double drain(Vec2 at, const LinkState& link, const WorldConfig& w) {
  double total = 0.0;
  for (auto id : {link.serving, link.target}) {
    if (!id) continue;
    const auto& s = w.stations[static_cast<std::size_t>(*id - 1)];
    total += std::hypot(at.x - s.center.x, at.y - s.center.y) / s.radius + w.epsilon;
  }
  return total;
}

void ac7(const Comparison& cmp, const ExperimentConfig& cfg) {
  long channel_violations = 0, energy_violations = 0, link_mismatches = 0, travel_violations = 0;
  long accelerated = 0;
  double worst_energy = 0.0, worst_travel = 0.0;
  for (const auto& r : cmp.runs) {
    for (const auto& unit : r.trace) {
      for (std::size_t i = 0; i < cfg.world.stations.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        int held = 0;
        for (const auto& mt : unit.terminals) held += mt.link.holds(id) ? 1 : 0;
        if (held != unit.occupied[i] || held > cfg.world.stations[i].capacity) ++channel_violations;
      }
    }
    const std::size_t n = r.initial_terminals.size();
    std::vector<LinkState> link(n);
    std::vector<double> expected(n, kInitialEnergy);
    std::size_t cursor = 0;
    for (std::size_t u = 1; u < r.trace.size(); ++u) {
      const int t = r.trace[u].time;
      for (; cursor < r.events.size() && r.events[cursor].time == t; ++cursor) {
        const auto& e = r.events[cursor];
        auto& l = link[static_cast<std::size_t>(e.mt_id)];
        switch (e.kind) {
          case EventKind::Connected:
          case EventKind::HandoffCompleted:
            l = {LinkStatus::Connect, e.new_bs, std::nullopt, 0};
            break;
          case EventKind::HandoffInitiated:
            l = {LinkStatus::Handover, e.old_bs, e.new_bs, cfg.world.dwell};
            break;
          case EventKind::ConnectionCut:
            l = {};
            break;
          case EventKind::Blocked:
            break;
        }
      }
      for (std::size_t m = 0; m < n; ++m) {
        const auto& now = r.trace[u].terminals[m];
        const auto& before = r.trace[u - 1].terminals[m];
        if (now.link.status != link[m].status || now.link.serving != link[m].serving ||
            now.link.target != link[m].target) {
          ++link_mismatches;
        }
        if (now.energy > before.energy) ++energy_violations;
        expected[m] = std::max(0.0, expected[m] - drain(now.position, link[m], cfg.world));
      }
    }
    for (std::size_t m = 0; m < n; ++m) {
      const double err = std::abs(r.trace.back().terminals[m].energy - expected[m]);
      worst_energy = std::max(worst_energy, err);
      if (err > 1e-9) ++energy_violations;
      const auto& plan = r.initial_terminals[m].motion;
      if (plan.kind() == MotionPlan::Kind::Accelerated) {
        ++accelerated;
        const double rel = std::abs(r.trace.back().terminals[m].odometer - plan.total_distance()) / plan.total_distance();
        worst_travel = std::max(worst_travel, rel);
        if (rel > 1e-9) ++travel_violations;
      }
    }
  }
  report("AC7", channel_violations == 0 && energy_violations == 0 && link_mismatches == 0 && travel_violations == 0,
         fmt("%zu runs: %ld channel-count violations; %ld energy violations (max |err| %.3g, tol 1e-9); "
             "%ld log/state mismatches; %ld accelerated terminals, max relative travel error %.3g (tol 1e-9)",
             cmp.runs.size(), channel_violations, energy_violations, worst_energy, link_mismatches, accelerated,
             worst_travel));
}

}  // namespace

int main() {
  ExperimentConfig cfg = load_config(fs::path(EVOHANDOFF_SOURCE_DIR) / "configs/default.json");
  const fs::path out_root = fs::temp_directory_path() / "evohandoff_acceptance";
  fs::remove_all(out_root);
  cfg.output_dir = out_root / "first";

  ac1();

  const auto t0 = Clock::now();
  const Comparison cmp = compare(cfg, {.record_trace = true});
  const double elapsed = seconds_since(t0);

  ac2(cmp);
  ac3(cfg);
  ac4(cfg);
  ac5(cmp, elapsed);
  ac6(cfg, cfg.output_dir);
  ac7(cmp, cfg);

  fs::remove_all(out_root);
  std::printf("%s: %d of 7 criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
