#pragma once

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "crowdbench/metrics.hpp"
#include "crowdbench/navigation.hpp"
#include "crowdbench/scenario.hpp"

namespace crowdbench {

/// Radar axes in chart order.
inline constexpr std::array<const char*, 7> kMetricNames{
    "time_ratio", "length_ratio", "smoothness_ratio", "nbr_reac", "nbr_vel", "prox", "colliding"};

/// Metrics of one scenario x controller crowd run.
struct ScenarioResult {
  std::string scenario_id;
  ControllerKind controller = ControllerKind::Baseline;
  FlowKind flow = FlowKind::OneDPlus;
  int agents = 0;
  std::string crowd_config;
  std::string status;  // goal_reached | timed_out | failed
  PathStats stats;
  PathEfficiency efficiency;
  FlowEffect effect;
  double prox = 0.0;
  double colliding = 1.0;
  double scenario_time = 0.0;
  double collision_time = 0.0;
  int n_collisions = 0;
  double energy_sum = 0.0;
  std::string error;
  std::vector<CollisionEvent> events;

  bool failed() const { return status == "failed"; }
  /// Raw values in kMetricNames order.
  std::array<double, 7> metrics() const;
  /// Semicolon-separated flags (timed_out, no_neighbors, failed).
  std::string flags() const;
};

struct SoloResult {
  ControllerKind controller = ControllerKind::Baseline;
  std::string status;
  PathStats stats;
};

struct MeanStd {
  double mean = 0.0;
  double stddev = 0.0;  // population
  int n = 0;
};

MeanStd mean_and_stddev(std::span<const double> values);

struct RadarRow {
  ControllerKind controller = ControllerKind::Baseline;
  std::string subset;  // all | low_density
  std::string metric;
  MeanStd value;
};

struct ControllerSummary {
  ControllerKind controller = ControllerKind::Baseline;
  int runs = 0;
  int failed = 0;
  CollisionRates rates;
};

struct ExpectedCell {
  std::string scenario_id;
  ControllerKind controller = ControllerKind::Baseline;
};

struct BenchmarkReport {
  std::vector<std::string> crowd_configs;
  std::vector<SoloResult> solos;
  std::vector<ScenarioResult> scenarios;  // sorted by (scenario_id, controller)
  std::vector<RadarRow> radar;
  std::vector<ControllerSummary> controllers;
  std::vector<std::string> flagged;
};

/// Sorts results, computes radar means and standard deviations of the chart
/// values over all scenarios and over the 50-agent subset, pools collision
/// events per controller, and flags failed or missing cells.
BenchmarkReport aggregate(std::vector<ScenarioResult> results, std::vector<SoloResult> solos,
                          std::span<const ExpectedCell> expected,
                          std::vector<std::string> crowd_configs);

// ---------------------------------------------------------------------------
// Report files

/// scenarios.csv columns, fixed order.
inline constexpr std::array<const char*, 22> kScenarioColumns{
    "scenario_id", "controller", "flow", "agents", "crowd_config", "status",
    "T", "L", "J", "time_ratio", "length_ratio", "smoothness_ratio",
    "nbr_vel", "nbr_reac", "prox", "colliding", "scenario_time", "collision_time",
    "n_collisions", "energy_sum", "flags", "error"};

/// Shortest decimal that round-trips; "inf" for infinity.
std::string format_double(double value);
double parse_double(const std::string& text);

/// Writes scenarios.csv, solo.csv, collisions.csv, radar.csv, histogram.csv
/// and summary.json into `dir`.
void write_report(const std::filesystem::path& dir, const BenchmarkReport& report);

struct StoredResults {
  std::vector<std::string> crowd_configs;
  std::vector<SoloResult> solos;
  std::vector<ScenarioResult> scenarios;
  std::vector<ExpectedCell> expected;
};

/// Reads back what write_report stored, enough to re-aggregate.
StoredResults read_results(const std::filesystem::path& dir);

}  // namespace crowdbench
