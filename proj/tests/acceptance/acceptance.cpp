// Acceptance checks. Prints one PASS/FAIL line per criterion; exit status is
// nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cli.hpp"
#include "crowdbench/crowd_models.hpp"
#include "crowdbench/metrics.hpp"
#include "crowdbench/neighbor_grid.hpp"
#include "crowdbench/report.hpp"
#include "crowdbench/runner.hpp"
#include "crowdbench/scenario.hpp"
#include "crowdbench/scenario_io.hpp"
#include "crowdbench/simulation.hpp"

using namespace crowdbench;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

constexpr std::uint64_t kMasterSeed = 42;

struct Verdict {
  bool pass = true;
  std::string detail;
};

int g_failures = 0;

void report(int id, const char* name, const Verdict& v) {
  std::printf("%s C%d %s: %s\n", v.pass ? "PASS" : "FAIL", id, name, v.detail.c_str());
  std::fflush(stdout);
  if (!v.pass) ++g_failures;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::map<std::string, std::string> directory_bytes(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    std::ifstream in(e.path(), std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    out[fs::relative(e.path(), dir).string()] = ss.str();
  }
  return out;
}

// ---------------------------------------------------------------------------

Verdict suite_structure(const fs::path& work) {
  const fs::path dir = work / "suite";
  fs::remove_all(dir);
  const auto t0 = Clock::now();
  const int code = cli::cli_main({"crowdbench", "generate", "--seed", std::to_string(kMasterSeed),
                                  "--out", dir.string()});
  const double elapsed = seconds_since(t0);
  if (code != 0) return {false, "generate exited with " + std::to_string(code)};
  const SuiteSpec suite = load_suite(dir);
  std::map<FlowKind, int> flows;
  std::map<int, int> agents;
  std::map<std::string, int> crowds;
  std::set<std::string> cells;
  bool counts_ok = true;
  for (const auto& s : suite.scenarios) {
    ++flows[s.flow];
    ++agents[s.density.agents];
    ++crowds[s.crowd.label];
    cells.insert(s.id);
    counts_ok &= static_cast<int>(s.agents.size()) == s.density.agents;
  }
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(dir)) files += e.path().extension() == ".json";
  bool ok = suite.scenarios.size() == 100 && cells.size() == 100 && files == 101 && counts_ok &&
            flows.size() == 5 && crowds.size() == 5 &&
            agents == std::map<int, int>{{50, 25}, {100, 25}, {200, 25}, {350, 25}};
  for (const auto& [_, n] : flows) ok &= n == 20;
  for (const auto& [_, n] : crowds) ok &= n == 20;
  ok &= elapsed < 1.0;
  return {ok, fmt("%zu scenarios, %zu flows x %zu densities x %zu crowds, %.3f s", suite.scenarios.size(),
                  flows.size(), agents.size(), crowds.size(), elapsed)};
}

struct Sweep {
  BenchmarkReport report;
  int failures = 0;
  double seconds = 0.0;
  int jobs = 1;
};

Sweep full_sweep(const fs::path& work) {
  RunPlan plan;
  plan.suite = load_suite(work / "suite");
  plan.output_dir = work / "sweep";
  plan.jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  fs::remove_all(plan.output_dir);
  const auto t0 = Clock::now();
  int done = 0;
  const SuiteRun run = run_suite(plan, [&](const std::string& msg) {
    std::fprintf(stderr, "[sweep %d/303] %s\n", ++done, msg.c_str());
  });
  return {run.report, run.failures, seconds_since(t0), plan.jobs};
}

const ControllerSummary* summary(const BenchmarkReport& r, ControllerKind c) {
  for (const auto& s : r.controllers) {
    if (s.controller == c) return &s;
  }
  return nullptr;
}

Verdict safety_ordering(const Sweep& sweep) {
  const auto* b = summary(sweep.report, ControllerKind::Baseline);
  const auto* d = summary(sweep.report, ControllerKind::Dwa);
  const auto* r = summary(sweep.report, ControllerKind::Rvo);
  if (!b || !d || !r) return {false, "missing controller summary"};
  // The budget is 30 min on 8 workers; with fewer workers the same total work is allowed.
  const double budget = 30.0 * 60.0 * 8.0 / std::min(sweep.jobs, 8);
  const bool fc = r->rates.f_c < d->rates.f_c && d->rates.f_c < b->rates.f_c;
  const bool q = r->rates.q < d->rates.q && d->rates.q < b->rates.q;
  const bool ratio = r->rates.q < 0.6 * b->rates.q;
  const bool time = sweep.seconds < budget;
  const bool complete = sweep.report.scenarios.size() == 300 && sweep.failures == 0;
  return {fc && q && ratio && time && complete,
          fmt("f_c rvo/dwa/baseline = %.4f/%.4f/%.4f 1/s [%s]; Q = %.4f/%.4f/%.4f J/s [%s]; "
              "Q(rvo)/Q(baseline) = %.3f [%s]; %zu runs, %d failed; %.0f s on %d worker(s), budget %.0f s",
              r->rates.f_c, d->rates.f_c, b->rates.f_c, fc ? "ordered" : "NOT ordered", r->rates.q,
              d->rates.q, b->rates.q, q ? "ordered" : "NOT ordered", b->rates.q > 0 ? r->rates.q / b->rates.q : 0.0,
              ratio ? "<0.6" : ">=0.6", sweep.report.scenarios.size(), sweep.failures, sweep.seconds,
              sweep.jobs, budget)};
}

Verdict low_density_safety(const Sweep& sweep) {
  std::string detail;
  bool ok = true;
  for (const auto c : {ControllerKind::Baseline, ControllerKind::Dwa, ControllerKind::Rvo}) {
    double sum = 0.0;
    int n = 0;
    for (const auto& s : sweep.report.scenarios) {
      if (s.controller == c && s.agents == 50) {
        sum += s.colliding;
        ++n;
      }
    }
    const double mean = n > 0 ? sum / n : 0.0;
    ok &= n == 25 && mean >= 0.98;
    detail += fmt("%s %.4f (n=%d) ", to_string(c), mean, n);
  }
  return {ok, detail + "threshold 0.98"};
}

Verdict baseline_path(const Sweep& sweep) {
  double worst = 0.0;
  std::string worst_id;
  std::map<ControllerKind, std::pair<double, int>> time_ratio;
  for (const auto& s : sweep.report.scenarios) {
    auto& [sum, n] = time_ratio[s.controller];
    sum += s.efficiency.time_ratio;
    ++n;
    if (s.controller != ControllerKind::Baseline) continue;
    const double dev = std::abs(s.efficiency.length_ratio - 1.0);
    if (dev >= worst) {
      worst = dev;
      worst_id = s.scenario_id;
    }
  }
  auto mean = [&](ControllerKind c) {
    const auto& [sum, n] = time_ratio[c];
    return n > 0 ? sum / n : 0.0;
  };
  const double tb = mean(ControllerKind::Baseline);
  const double td = mean(ControllerKind::Dwa);
  const double tr = mean(ControllerKind::Rvo);
  const bool length_ok = time_ratio[ControllerKind::Baseline].second == 100 && worst <= 0.01;
  const bool time_ok = tb > td && tb > tr;
  return {length_ok && time_ok,
          fmt("max |L/Lcr - 1| = %.5f at %s [tol 0.01]; mean T/Tcr baseline/dwa/rvo = %.4f/%.4f/%.4f",
              worst, worst_id.c_str(), tb, td, tr)};
}

Verdict solo_physics() {
  const SuiteSpec suite = generate_suite(kMasterSeed);
  const ScenarioSpec solo = solo_scenario(suite.scenarios.front());
  const RobotLimits& limits = solo.robot.limits;
  const double expected = solo.goal.target_progress / limits.v_max + limits.v_max / (2.0 * limits.a_max);
  const double tol = 2.0 * solo.settings.dt;
  const RunOutcome out = run_scenario(solo, {ControllerKind::Baseline, NavParams{}});
  const double t = out.records.back().t;
  const bool ok = out.status == RunStatus::GoalReached && std::abs(t - expected) <= tol;
  return {ok, fmt("T = %.4f s, expected %.4f +/- %.2f s", t, expected, tol)};
}

StepRecord record(double t, double rx, std::vector<AgentRecord> agents = {}, ContactSet contacts = {}) {
  StepRecord r;
  r.t = t;
  r.robot = {rx, 5.0, 0.0, 1.0, 0.0};
  r.agents = std::move(agents);
  r.contacts = std::move(contacts);
  return r;
}

Contact contact(int id, double v_rel, bool onset) {
  Contact c;
  c.agent_id = id;
  c.v_rel = v_rel;
  c.onset = onset;
  return c;
}

Verdict metric_oracles() {
  constexpr double tol = 1e-9;
  int bad = 0;
  auto near = [&](double got, double want) { bad += !(std::abs(got - want) <= tol); };

  near(proximity({{record(0, 10, {{0, 16, 5, 0, 0}}), record(0.05, 10, {{0, 30, 5, 0, 0}})}}), 0.0);
  near(proximity({{record(0, 10, {{0, 10, 5, 0, 0}}), record(0.05, 10, {{0, 10, 5, 0, 0}})}}), 1.0);
  near(proximity({{record(0, 10, {{0, 12.5, 5, 0, 0}}), record(0.05, 10, {{0, 15, 5, 0, 0}})}}), 0.25);
  near(colliding_score(0.0, 180.0), 1.0);
  near(colliding_score(18.0, 180.0), 0.9);
  near(colliding_score(180.0, 180.0), 0.0);
  near(impact_energy(13, 20, 0.0), 0.0);
  near(impact_energy(13, 20, 1.0), 0.5 * (13.0 * 20.0 / 33.0));
  near(impact_energy(24, 20, 2.0), 0.5 * (24.0 * 20.0 / 44.0) * 4.0);
  near(collision_rates({}, 100.0).f_c, 0.0);
  near(collision_rates({}, 100.0).q, 0.0);
  std::vector<CollisionEvent> events(3);
  for (int i = 0; i < 3; ++i) events[i].energy = i + 1.0;
  const auto rates = collision_rates(events, 10.0);
  near(rates.f_c, 0.3);
  near(rates.q, 0.6);
  const int fixture_failures = bad;

  std::mt19937_64 rng(2718);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::uniform_int_distribution<int> nsteps(2, 60);
  int fuzz_failures = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = nsteps(rng);
    const double rate = trial % 4 == 0 ? 0.0 : u01(rng) * 0.5;
    std::vector<StepRecord> recs;
    std::set<int> touching;
    for (int k = 0; k < n; ++k) {
      std::vector<AgentRecord> agents;
      for (int id = 0; id < 4; ++id) {
        agents.push_back({id, 10.0 + (u01(rng) - 0.5) * 16.0, u01(rng) * 10.0, u01(rng), u01(rng)});
      }
      ContactSet contacts;
      std::set<int> now;
      for (int id = 0; k > 0 && id < 4; ++id) {
        if (u01(rng) < rate) {
          contacts.push_back(contact(id, u01(rng) * 2.0, !touching.contains(id)));
          now.insert(id);
        }
      }
      touching = now;
      recs.push_back(record(k * 0.05, 10.0, agents, contacts));
    }
    const double prox = proximity(recs);
    const double coll = colliding_score(recs);
    const auto ev = collision_events(recs, CollisionModel{});
    const bool ok = prox >= 0.0 && prox <= 1.0 && coll >= 0.0 && coll <= 1.0 &&
                    (coll == 1.0) == ev.empty() && ev.empty() == (collision_rates(ev, recs.back().t).n_collisions == 0);
    fuzz_failures += !ok;
  }
  return {fixture_failures == 0 && fuzz_failures == 0,
          fmt("%d fixture mismatches (tol 1e-9), %d of 1000 fuzz traces violating bounds/equivalence",
              fixture_failures, fuzz_failures)};
}

struct HeadOn {
  double min_separation = 1e9;
  double max_mirror_error = 0.0;
  bool passed = false;
};

HeadOn head_on(double lateral_offset) {
  OrcaAgent a;
  a.position = {20, 5 + lateral_offset};
  a.velocity = a.preferred_velocity = {1.4, 0};
  OrcaAgent b;
  b.position = {26, 5 - lateral_offset};
  b.velocity = b.preferred_velocity = {-1.4, 0};
  const OrcaOptions options{1.5, 0.05, 0.5};
  const Vector2 center = (a.position + b.position) * 0.5;
  HeadOn r;
  for (int s = 0; s < 200; ++s) {
    const Neighbor na{0, a.position, a.velocity, a.radius};
    const Neighbor nb{1, b.position, b.velocity, b.radius};
    a.velocity = orca_velocity(a, std::span(&nb, 1), options);
    b.velocity = orca_velocity(b, std::span(&na, 1), options);
    a.position += a.velocity * options.time_step;
    b.position += b.velocity * options.time_step;
    r.min_separation = std::min(r.min_separation, norm(a.position - b.position));
    const Vector2 mid = (a.position + b.position) * 0.5;
    r.max_mirror_error = std::max({r.max_mirror_error, norm(mid - center), norm(a.velocity + b.velocity)});
  }
  r.passed = a.position.x > b.position.x;
  return r;
}

Verdict orca_head_on() {
  const double need = 0.6 - 1e-3;
  const HeadOn offset = head_on(0.05);
  const HeadOn collinear = head_on(0.0);
  const bool ok = offset.min_separation >= need && offset.max_mirror_error <= 1e-9 && offset.passed &&
                  collinear.min_separation >= need && collinear.max_mirror_error <= 1e-9;
  return {ok, fmt("offset pair: min separation %.4f m, mirror error %.1e, %s; collinear pair: min "
                  "separation %.4f m, mirror error %.1e, %s (need separation >= %.3f)",
                  offset.min_separation, offset.max_mirror_error, offset.passed ? "passed" : "did not pass",
                  collinear.min_separation, collinear.max_mirror_error,
                  collinear.passed ? "passed" : "halted apart", need)};
}

Verdict grid_equivalence() {
  const WorldSpec world;
  std::mt19937_64 rng(31337);
  std::uniform_real_distribution<double> ux(0.0, world.length);
  std::uniform_real_distribution<double> uy(0.0, world.width);
  std::uniform_real_distribution<double> ur(0.0, 6.0);
  NeighborGrid grid(world, 2.5);
  int mismatches = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<Vector2> pts(200);
    for (auto& p : pts) p = {ux(rng), uy(rng)};
    grid.build(pts);
    for (int q = 0; q < 5; ++q) {
      const int self = q % 2 == 0 ? static_cast<int>(rng() % pts.size()) : -1;
      const Vector2 p = self >= 0 ? pts[self] : Vector2{ux(rng), uy(rng)};
      const double range = ur(rng);
      std::vector<int> brute;
      for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
        if (i != self && abs_sq(pts[i] - p) <= range * range) brute.push_back(i);
      }
      mismatches += grid.query(p, range, self) != brute;
    }
  }
  return {mismatches == 0, fmt("%d of 5000 queries differ over 1000 configurations of 200 agents", mismatches)};
}

Verdict determinism(const fs::path& work) {
  RunPlan plan;
  const SuiteSpec suite = load_suite(work / "suite");
  for (const auto& s : suite.scenarios) {
    if (s.density.agents <= 100 && plan.suite.scenarios.size() < 4) plan.suite.scenarios.push_back(s);
  }
  plan.suite.master_seed = suite.master_seed;
  plan.records = RecordMode::Full;
  std::map<std::string, std::string> bytes[2];
  const int jobs[2] = {1, 4};
  for (int k = 0; k < 2; ++k) {
    plan.jobs = jobs[k];
    plan.output_dir = work / ("determinism_j" + std::to_string(jobs[k]));
    fs::remove_all(plan.output_dir);
    run_suite(plan);
    bytes[k] = directory_bytes(plan.output_dir);
  }
  const bool ok = !bytes[0].empty() && bytes[0] == bytes[1];
  return {ok, fmt("%zu files compared between 1 and 4 workers: %s", bytes[0].size(),
                  ok ? "byte-identical" : "DIFFER")};
}

Verdict performance() {
  const SuiteSpec suite = generate_suite(kMasterSeed);
  double worst = 1e300;
  std::string worst_cell;
  for (const auto& base : suite.scenarios) {
    if (base.density.agents != 350 || base.flow != FlowKind::OneDBoth) continue;
    for (const auto c : {ControllerKind::Baseline, ControllerKind::Dwa, ControllerKind::Rvo}) {
      ScenarioSpec spec = base;
      spec.goal.target_progress = 1e9;  // run the full time limit
      const auto t0 = Clock::now();
      const RunOutcome out = run_scenario(spec, {c, NavParams{}});
      const double wall = seconds_since(t0);
      const double factor = out.records.back().t / wall;
      std::fprintf(stderr, "[perf] %s/%s %.1f s simulated in %.2f s (%.1fx)\n", spec.id.c_str(),
                   to_string(c), out.records.back().t, wall, factor);
      if (factor < worst) {
        worst = factor;
        worst_cell = spec.id + "/" + to_string(c);
      }
    }
  }
  return {worst >= 10.0, fmt("slowest 350-agent cell %s at %.1fx real time (need >= 10x)", worst_cell.c_str(), worst)};
}

}  // namespace

int main(int argc, char** argv) {
  fs::path work = fs::temp_directory_path() / "crowdbench_acceptance";
  bool skip_sweep = false;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--work" && i + 1 < argc) {
      work = argv[++i];
    } else if (arg == "--skip-sweep") {
      skip_sweep = true;
    } else {
      std::fprintf(stderr, "usage: %s [--work DIR] [--skip-sweep]\n", argv[0]);
      return 1;
    }
  }
  fs::create_directories(work);

  report(1, "suite structure", suite_structure(work));
  report(5, "solo-run physics", solo_physics());
  report(6, "metric oracles", metric_oracles());
  report(7, "ORCA head-on", orca_head_on());
  report(8, "neighbor grid", grid_equivalence());
  report(9, "determinism", determinism(work));
  report(10, "performance", performance());
  if (skip_sweep) {
    std::printf("SKIP C2-C4 full sweep (--skip-sweep)\n");
  } else {
    const Sweep sweep = full_sweep(work);
    report(2, "safety ordering", safety_ordering(sweep));
    report(3, "low-density safety", low_density_safety(sweep));
    report(4, "baseline path", baseline_path(sweep));
  }
  std::printf("%s: %d criterion failure(s)\n", g_failures == 0 ? "ACCEPTED" : "REJECTED", g_failures);
  return g_failures == 0 ? 0 : 1;
}
