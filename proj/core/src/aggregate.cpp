#include <algorithm>
#include <cmath>
#include <set>

#include "crowdbench/report.hpp"

namespace crowdbench {

std::array<double, 7> ScenarioResult::metrics() const {
  return {efficiency.time_ratio, efficiency.length_ratio, efficiency.smoothness_ratio,
          effect.nbr_reac,         effect.nbr_vel,            prox,
          colliding};
}

std::string ScenarioResult::flags() const {
  std::string out;
  const auto add = [&](const char* f) {
    if (!out.empty()) out += ';';
    out += f;
  };
  if (failed()) add("failed");
  if (efficiency.timed_out) add("timed_out");
  if (effect.no_neighbors) add("no_neighbors");
  return out;
}

MeanStd mean_and_stddev(std::span<const double> values) {
  MeanStd out;
  out.n = static_cast<int>(values.size());
  if (values.empty()) return out;
  double sum = 0.0;
  for (const double v : values) sum += v;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  out.mean = std::clamp(sum / out.n, *lo, *hi);
  double sq = 0.0;
  for (const double v : values) sq += (v - out.mean) * (v - out.mean);
  out.stddev = std::sqrt(sq / out.n);
  return out;
}

BenchmarkReport aggregate(std::vector<ScenarioResult> results, std::vector<SoloResult> solos,
                          std::span<const ExpectedCell> expected,
                          std::vector<std::string> crowd_configs) {
  BenchmarkReport report;
  report.crowd_configs = std::move(crowd_configs);

  std::sort(results.begin(), results.end(), [](const auto& a, const auto& b) {
    return a.scenario_id != b.scenario_id ? a.scenario_id < b.scenario_id : a.controller < b.controller;
  });
  std::sort(solos.begin(), solos.end(),
            [](const auto& a, const auto& b) { return a.controller < b.controller; });

  std::set<std::pair<std::string, ControllerKind>> present;
  std::set<ControllerKind> controllers;
  for (const auto& r : results) {
    present.insert({r.scenario_id, r.controller});
    controllers.insert(r.controller);
    if (r.failed()) report.flagged.push_back("failed:" + r.scenario_id + "/" + to_string(r.controller));
  }
  for (const auto& cell : expected) {
    controllers.insert(cell.controller);
    if (!present.contains({cell.scenario_id, cell.controller})) {
      report.flagged.push_back("missing:" + cell.scenario_id + "/" + to_string(cell.controller));
    }
  }
  std::sort(report.flagged.begin(), report.flagged.end());

  for (const auto controller : controllers) {
    ControllerSummary summary;
    summary.controller = controller;
    std::vector<CollisionEvent> events;
    double total_time = 0.0;
    for (const char* subset : {"all", "low_density"}) {
      std::array<std::vector<double>, 7> columns;
      for (const auto& r : results) {
        if (r.controller != controller || r.failed()) continue;
        if (std::string(subset) == "low_density" && r.agents != kDensityLevels[0].agents) continue;
        const auto m = r.metrics();
        for (std::size_t k = 0; k < m.size(); ++k) columns[k].push_back(chart_value(m[k]));
      }
      for (std::size_t k = 0; k < columns.size(); ++k) {
        report.radar.push_back({controller, subset, kMetricNames[k], mean_and_stddev(columns[k])});
      }
    }
    for (const auto& r : results) {
      if (r.controller != controller) continue;
      ++summary.runs;
      if (r.failed()) {
        ++summary.failed;
        continue;
      }
      total_time += r.scenario_time;
      events.insert(events.end(), r.events.begin(), r.events.end());
    }
    summary.rates = collision_rates(events, total_time);
    report.controllers.push_back(std::move(summary));
  }

  report.scenarios = std::move(results);
  report.solos = std::move(solos);
  return report;
}

}  // namespace crowdbench
