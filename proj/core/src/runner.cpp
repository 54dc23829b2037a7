#include "crowdbench/runner.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "crowdbench/record_io.hpp"

namespace crowdbench {

CollisionModel collision_model_for(const ScenarioSpec& spec) {
  CollisionModel model;
  model.robot_mass = spec.robot.mass;
  model.robot_top_height = spec.robot.top_height;
  return model;
}

ControllerSpec controller_for(const ScenarioSpec& spec, ControllerKind kind) {
  if (spec.controller && spec.controller->kind == kind) return *spec.controller;
  return ControllerSpec{kind, NavParams{}};
}

ScenarioResult evaluate_run(const ScenarioSpec& spec, ControllerKind controller,
                            const RunOutcome& outcome, const PathStats& solo) {
  ScenarioResult r;
  r.scenario_id = spec.id;
  r.controller = controller;
  r.flow = spec.flow;
  r.agents = spec.density.agents;
  r.crowd_config = spec.crowd.label;
  r.status = to_string(outcome.status);

  const std::span<const StepRecord> records = outcome.records;
  const auto trajectory = robot_trajectory(records);
  r.stats = path_stats(trajectory);
  r.efficiency = path_efficiency(solo, r.stats, outcome.status == RunStatus::TimedOut,
                                 spec.goal.time_limit);
  r.effect = flow_effect(records);
  r.prox = proximity(records);
  r.scenario_time = records.empty() ? 0.0 : records.back().t - records.front().t;
  r.collision_time = collision_time(records);
  r.colliding = colliding_score(r.collision_time, r.scenario_time);
  r.events = collision_events(records, collision_model_for(spec));
  r.n_collisions = static_cast<int>(r.events.size());
  for (const auto& e : r.events) r.energy_sum += e.energy;
  return r;
}

SoloResult run_solo(const ScenarioSpec& reference, const ControllerSpec& controller) {
  const ScenarioSpec solo = solo_scenario(reference);
  const RunOutcome outcome = run_scenario(solo, controller);
  return {controller.kind, to_string(outcome.status), path_stats(robot_trajectory(outcome.records))};
}

void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn) {
  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(count)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

SuiteRun run_suite(const RunPlan& plan, const std::function<void(const std::string&)>& progress) {
  const auto& scenarios = plan.suite.scenarios;
  const std::filesystem::path runs_dir = plan.output_dir / "runs";
  if (plan.records == RecordMode::Full) std::filesystem::create_directories(runs_dir);
  std::mutex progress_mutex;
  const auto note = [&](const std::string& msg) {
    if (!progress) return;
    std::lock_guard lock(progress_mutex);
    progress(msg);
  };

  // Solo references: the empty corridor is the same for every cell.
  std::vector<SoloResult> solos(plan.controllers.size());
  if (!scenarios.empty()) {
    parallel_for(plan.controllers.size(), plan.jobs, [&](std::size_t i) {
      const auto kind = plan.controllers[i];
      solos[i] = run_solo(scenarios.front(), controller_for(scenarios.front(), kind));
      note(std::string("solo/") + to_string(kind) + " " + solos[i].status);
    });
  }

  const std::size_t n_ctrl = plan.controllers.size();
  std::vector<ScenarioResult> results(scenarios.size() * n_ctrl);
  std::vector<ExpectedCell> expected;
  for (const auto& s : scenarios) {
    for (const auto kind : plan.controllers) expected.push_back({s.id, kind});
  }

  parallel_for(results.size(), plan.jobs, [&](std::size_t task) {
    const ScenarioSpec& spec = scenarios[task / n_ctrl];
    const ControllerKind kind = plan.controllers[task % n_ctrl];
    ScenarioResult& result = results[task];
    try {
      const RunOutcome outcome = run_scenario(spec, controller_for(spec, kind));
      result = evaluate_run(spec, kind, outcome, solos[task % n_ctrl].stats);
      if (plan.records == RecordMode::Full) {
        write_records(runs_dir / (spec.id + "__" + to_string(kind) + ".jsonl"), outcome.records);
      }
    } catch (const std::exception& e) {
      result = ScenarioResult{};
      result.scenario_id = spec.id;
      result.controller = kind;
      result.flow = spec.flow;
      result.agents = spec.density.agents;
      result.crowd_config = spec.crowd.label;
      result.status = "failed";
      result.error = e.what();
    }
    note(spec.id + "/" + to_string(kind) + " " + result.status);
  });

  std::vector<std::string> configs;
  for (const auto& s : scenarios) {
    if (std::find(configs.begin(), configs.end(), s.crowd.label) == configs.end()) {
      configs.push_back(s.crowd.label);
    }
  }

  SuiteRun run;
  run.failures = static_cast<int>(std::count_if(results.begin(), results.end(),
                                                [](const auto& r) { return r.failed(); }));
  run.report = aggregate(std::move(results), std::move(solos), expected, std::move(configs));
  write_report(plan.output_dir, run.report);
  return run;
}

}  // namespace crowdbench
