#include "crowdbench/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace crowdbench {

std::vector<TrajectorySample> robot_trajectory(std::span<const StepRecord> records) {
  std::vector<TrajectorySample> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back({r.t, r.robot.x, r.robot.y, r.robot.v, r.robot.w});
  return out;
}

PathStats path_stats(std::span<const TrajectorySample> trajectory, double lambda) {
  PathStats s;
  if (trajectory.empty()) return s;
  s.duration = trajectory.back().t - trajectory.front().t;
  for (std::size_t k = 1; k < trajectory.size(); ++k) {
    const auto& a = trajectory[k - 1];
    const auto& b = trajectory[k];
    s.length += std::hypot(b.x - a.x, b.y - a.y);
    s.jerkiness += std::abs(b.v - a.v) + lambda * std::abs(b.w - a.w);
  }
  return s;
}

PathEfficiency path_efficiency(const PathStats& solo, const PathStats& crowd, bool crowd_timed_out,
                               double time_limit) {
  constexpr double kEps = 1e-9;
  constexpr double kJerkEps = 1e-3;
  PathEfficiency e;
  e.timed_out = crowd_timed_out;
  const double crowd_time = crowd_timed_out ? time_limit : crowd.duration;
  e.time_ratio = std::max(solo.duration, kEps) / std::max(crowd_time, kEps);
  e.length_ratio = std::max(solo.length, kEps) / std::max(crowd.length, kEps);
  e.smoothness_ratio = std::max(solo.jerkiness, kJerkEps) / std::max(crowd.jerkiness, kJerkEps);
  return e;
}

double chart_value(double raw) { return std::clamp(raw, 0.0, 1.5); }

FlowEffect flow_effect(std::span<const StepRecord> records, double neighbor_range) {
  constexpr double kOmegaFloor = 1e-3;
  constexpr double kStill = 1e-9;
  const double range_sq = neighbor_range * neighbor_range;

  double v_all_sum = 0.0, v_nbr_sum = 0.0, w_all_sum = 0.0, w_nbr_sum = 0.0;
  int v_all_steps = 0, v_nbr_steps = 0, w_all_steps = 0, w_nbr_steps = 0;

  for (std::size_t k = 0; k < records.size(); ++k) {
    const auto& rec = records[k];
    if (rec.agents.empty()) continue;
    const StepRecord* prev = k > 0 ? &records[k - 1] : nullptr;
    const bool has_rate = prev != nullptr && prev->agents.size() == rec.agents.size();
    const double dt = has_rate ? rec.t - prev->t : 0.0;

    double v_all = 0.0, v_nbr = 0.0, w_all = 0.0, w_nbr = 0.0;
    int n_nbr = 0;
    for (std::size_t i = 0; i < rec.agents.size(); ++i) {
      const auto& a = rec.agents[i];
      const double speed = std::hypot(a.vx, a.vy);
      double turn = 0.0;
      if (has_rate && dt > 0.0) {
        const auto& b = prev->agents[i];
        if (speed > kStill && std::hypot(b.vx, b.vy) > kStill) {
          turn = std::abs(wrap_angle(std::atan2(a.vy, a.vx) - std::atan2(b.vy, b.vx))) / dt;
        }
      }
      v_all += speed;
      w_all += turn;
      const double dx = a.x - rec.robot.x;
      const double dy = a.y - rec.robot.y;
      if (dx * dx + dy * dy <= range_sq) {
        v_nbr += speed;
        w_nbr += turn;
        ++n_nbr;
      }
    }
    const double n = static_cast<double>(rec.agents.size());
    v_all_sum += v_all / n;
    ++v_all_steps;
    if (has_rate && dt > 0.0) {
      w_all_sum += w_all / n;
      ++w_all_steps;
    }
    if (n_nbr > 0) {
      v_nbr_sum += v_nbr / n_nbr;
      ++v_nbr_steps;
      if (has_rate && dt > 0.0) {
        w_nbr_sum += w_nbr / n_nbr;
        ++w_nbr_steps;
      }
    }
  }

  FlowEffect out;
  if (v_nbr_steps == 0) {
    out.no_neighbors = true;
    return out;
  }
  const double v_all = v_all_sum / v_all_steps;
  const double v_nbr = v_nbr_sum / v_nbr_steps;
  out.nbr_vel = v_nbr / std::max(v_all, 1e-9);
  const double w_all = w_all_steps > 0 ? w_all_sum / w_all_steps : 0.0;
  const double w_nbr = w_nbr_steps > 0 ? w_nbr_sum / w_nbr_steps : 0.0;
  out.nbr_reac = std::clamp(w_all / std::max(w_nbr, kOmegaFloor), 0.0, 5.0);
  return out;
}

double closest_agent_distance(const StepRecord& record, double range) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& a : record.agents) {
    best = std::min(best, std::hypot(a.x - record.robot.x, a.y - record.robot.y));
  }
  return std::clamp(best, 0.0, range);
}

double proximity_from_distances(std::span<const double> d_min, double range) {
  if (d_min.empty()) return 0.0;
  double sum = 0.0;
  for (const double d : d_min) sum += std::clamp(d, 0.0, range) / range;
  return std::clamp(1.0 - sum / static_cast<double>(d_min.size()), 0.0, 1.0);
}

double proximity(std::span<const StepRecord> records, double range) {
  std::vector<double> d;
  d.reserve(records.size());
  for (const auto& r : records) d.push_back(closest_agent_distance(r, range));
  return proximity_from_distances(d, range);
}

double collision_time(std::span<const StepRecord> records) {
  double total = 0.0;
  for (std::size_t k = 1; k < records.size(); ++k) {
    if (!records[k].contacts.empty()) total += records[k].t - records[k - 1].t;
  }
  return total;
}

double colliding_score(double collision_time, double scenario_time) {
  if (!(scenario_time > 0.0)) return 1.0;
  return std::clamp(1.0 - collision_time / scenario_time, 0.0, 1.0);
}

double colliding_score(std::span<const StepRecord> records) {
  if (records.size() < 2) return 1.0;
  return colliding_score(collision_time(records), records.back().t - records.front().t);
}

}  // namespace crowdbench
