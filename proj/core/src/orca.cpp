#include <algorithm>
#include <cmath>

#include "crowdbench/crowd_models.hpp"

namespace crowdbench {
namespace {

constexpr double kParallelEps = 1e-9;

// Optimizes along line `line_no` subject to the earlier lines and the speed
// disc. Returns false when that segment is empty.
bool solve_on_line(std::span<const OrcaLine> lines, std::size_t line_no, double radius,
                   const Vector2& opt_velocity, bool direction_opt, Vector2& result) {
  const OrcaLine& line = lines[line_no];
  const double along = dot(line.point, line.direction);
  const double discriminant = along * along + radius * radius - abs_sq(line.point);
  if (discriminant < 0.0) return false;

  const double root = std::sqrt(discriminant);
  double t_left = -along - root;
  double t_right = -along + root;

  for (std::size_t i = 0; i < line_no; ++i) {
    const double denominator = det(line.direction, lines[i].direction);
    const double numerator = det(lines[i].direction, line.point - lines[i].point);
    if (std::abs(denominator) <= kParallelEps) {
      if (numerator < 0.0) return false;
      continue;
    }
    const double t = numerator / denominator;
    if (denominator >= 0.0) {
      t_right = std::min(t_right, t);
    } else {
      t_left = std::max(t_left, t);
    }
    if (t_left > t_right) return false;
  }

  if (direction_opt) {
    result = line.point + line.direction * (dot(opt_velocity, line.direction) > 0.0 ? t_right : t_left);
  } else {
    const double t = dot(line.direction, opt_velocity - line.point);
    result = line.point + line.direction * std::clamp(t, t_left, t_right);
  }
  return true;
}

// Returns lines.size() on success, otherwise the index of the first line
// that could not be satisfied.
std::size_t solve_planar(std::span<const OrcaLine> lines, double radius, const Vector2& opt_velocity,
                         bool direction_opt, Vector2& result) {
  if (direction_opt) {
    result = opt_velocity * radius;
  } else if (abs_sq(opt_velocity) > radius * radius) {
    result = normalized(opt_velocity) * radius;
  } else {
    result = opt_velocity;
  }

  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (det(lines[i].direction, lines[i].point - result) > 0.0) {
      const Vector2 previous = result;
      if (!solve_on_line(lines, i, radius, opt_velocity, direction_opt, result)) {
        result = previous;
        return i;
      }
    }
  }
  return lines.size();
}

// Infeasible case: minimize the largest violation over lines [begin, end).
void solve_least_violation(std::span<const OrcaLine> lines, std::size_t begin, double radius,
                           Vector2& result) {
  double distance = 0.0;
  std::vector<OrcaLine> projected;
  for (std::size_t i = begin; i < lines.size(); ++i) {
    if (det(lines[i].direction, lines[i].point - result) <= distance) continue;

    projected.clear();
    for (std::size_t j = 0; j < i; ++j) {
      OrcaLine line;
      const double determinant = det(lines[i].direction, lines[j].direction);
      if (std::abs(determinant) <= kParallelEps) {
        if (dot(lines[i].direction, lines[j].direction) > 0.0) continue;
        line.point = (lines[i].point + lines[j].point) * 0.5;
      } else {
        line.point = lines[i].point +
                     lines[i].direction *
                         (det(lines[j].direction, lines[i].point - lines[j].point) / determinant);
      }
      line.direction = normalized(lines[j].direction - lines[i].direction);
      projected.push_back(line);
    }

    const Vector2 previous = result;
    const Vector2 outward{-lines[i].direction.y, lines[i].direction.x};
    if (solve_planar(projected, radius, outward, true, result) < projected.size()) {
      // Only numerical error can get here; keep the last good value.
      result = previous;
    }
    distance = det(lines[i].direction, lines[i].point - result);
  }
}

}  // namespace

std::vector<OrcaLine> orca_lines(const OrcaAgent& agent, std::span<const Neighbor> neighbors,
                                 const OrcaOptions& options) {
  std::vector<OrcaLine> lines;
  lines.reserve(neighbors.size());
  const double inv_horizon = 1.0 / options.horizon;

  for (const auto& other : neighbors) {
    const Vector2 rel_position = other.position - agent.position;
    const Vector2 rel_velocity = agent.velocity - other.velocity;
    const double dist_sq = abs_sq(rel_position);
    const double combined = agent.radius + other.radius;
    const double combined_sq = combined * combined;

    OrcaLine line;
    Vector2 u;
    if (dist_sq > combined_sq) {
      // Vector from the cutoff center to the relative velocity.
      const Vector2 w = rel_velocity - rel_position * inv_horizon;
      const double w_length_sq = abs_sq(w);
      const double along = dot(w, rel_position);

      if (along < 0.0 && along * along > combined_sq * w_length_sq) {
        // Project on the cutoff circle.
        const double w_length = std::sqrt(w_length_sq);
        const Vector2 unit_w = w / w_length;
        line.direction = {unit_w.y, -unit_w.x};
        u = unit_w * (combined * inv_horizon - w_length);
      } else {
        // Project on the nearer leg of the cone.
        const double leg = std::sqrt(dist_sq - combined_sq);
        if (det(rel_position, w) > 0.0) {
          line.direction = Vector2{rel_position.x * leg - rel_position.y * combined,
                                   rel_position.x * combined + rel_position.y * leg} /
                           dist_sq;
        } else {
          line.direction = -Vector2{rel_position.x * leg + rel_position.y * combined,
                                    -rel_position.x * combined + rel_position.y * leg} /
                           dist_sq;
        }
        u = line.direction * dot(rel_velocity, line.direction) - rel_velocity;
      }
    } else {
      // Already overlapping: resolve within one time step.
      const double inv_step = 1.0 / options.time_step;
      const Vector2 w = rel_velocity - rel_position * inv_step;
      const double w_length = norm(w);
      const Vector2 unit_w = w_length > 0.0 ? w / w_length : Vector2{-1.0, 0.0};
      line.direction = {unit_w.y, -unit_w.x};
      u = unit_w * (combined * inv_step - w_length);
    }
    line.point = agent.velocity + u * options.responsibility;
    lines.push_back(line);
  }
  return lines;
}

Vector2 solve_orca_program(std::span<const OrcaLine> lines, double max_speed,
                           const Vector2& preferred_velocity) {
  Vector2 result;
  const std::size_t failed = solve_planar(lines, max_speed, preferred_velocity, false, result);
  if (failed < lines.size()) solve_least_violation(lines, failed, max_speed, result);
  return result;
}

Vector2 orca_velocity(const OrcaAgent& agent, std::span<const Neighbor> neighbors,
                      const OrcaOptions& options) {
  const auto lines = orca_lines(agent, neighbors, options);
  return solve_orca_program(lines, agent.max_speed, agent.preferred_velocity);
}

}  // namespace crowdbench
