#pragma once

#include <filesystem>
#include <functional>
#include <vector>

#include "crowdbench/metrics.hpp"
#include "crowdbench/report.hpp"
#include "crowdbench/scenario.hpp"
#include "crowdbench/simulation.hpp"

namespace crowdbench {

enum class RecordMode { Full, MetricsOnly };

struct RunPlan {
  SuiteSpec suite;
  std::vector<ControllerKind> controllers{ControllerKind::Baseline, ControllerKind::Dwa,
                                          ControllerKind::Rvo};
  std::filesystem::path output_dir;
  int jobs = 1;
  RecordMode records = RecordMode::MetricsOnly;
};

CollisionModel collision_model_for(const ScenarioSpec& spec);

/// Controller for a cell: the scenario's own controller block supplies the
/// parameters when its kind matches, defaults otherwise.
ControllerSpec controller_for(const ScenarioSpec& spec, ControllerKind kind);

/// Metrics of one finished crowd run against its solo reference.
ScenarioResult evaluate_run(const ScenarioSpec& spec, ControllerKind controller,
                            const RunOutcome& outcome, const PathStats& solo);

SoloResult run_solo(const ScenarioSpec& reference, const ControllerSpec& controller);

struct SuiteRun {
  BenchmarkReport report;
  int failures = 0;
  /// 0 on success, 2 when any run failed.
  int exit_code() const { return failures > 0 ? 2 : 0; }
};

/// Runs every scenario x controller pair plus one solo run per controller,
/// writes records (full mode) and the report into plan.output_dir.
/// Output bytes do not depend on plan.jobs.
SuiteRun run_suite(const RunPlan& plan, const std::function<void(const std::string&)>& progress = {});

/// Map `fn` over [0, count) on `jobs` threads.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn);

}  // namespace crowdbench
