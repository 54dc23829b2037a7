#include <algorithm>
#include <cmath>
#include <limits>

#include "crowdbench/sensors.hpp"

namespace crowdbench {

double lidar_beam_angle(const LidarSpec& spec, int beam) {
  if (spec.beams <= 1) return 0.0;
  const bool full_circle = spec.angular_span >= 2.0 * M_PI - 1e-12;
  if (full_circle) return spec.angular_span * beam / spec.beams;
  return -0.5 * spec.angular_span + spec.angular_span * beam / (spec.beams - 1);
}

double ray_circle(const Vector2& origin, const Vector2& direction, const Vector2& center,
                  double radius) {
  const Vector2 oc = origin - center;
  const double c = abs_sq(oc) - radius * radius;
  if (c <= 0.0) return 0.0;
  const double b = dot(oc, direction);
  if (b >= 0.0) return -1.0;
  const double disc = b * b - c;
  if (disc < 0.0) return -1.0;
  return -b - std::sqrt(disc);
}

double ray_segment(const Vector2& origin, const Vector2& direction, const Segment& segment) {
  const Vector2 e = segment.b - segment.a;
  const double denom = det(direction, e);
  if (std::abs(denom) < 1e-15) return -1.0;
  const Vector2 ao = segment.a - origin;
  const double t = det(ao, e) / denom;
  const double s = det(ao, direction) / denom;
  if (t < 0.0 || s < 0.0 || s > 1.0) return -1.0;
  return t;
}

LidarScan lidar_scan(const Pose& pose, std::span<const AgentState> agents, const WorldSpec& world,
                     const LidarSpec& spec, std::mt19937_64& rng) {
  LidarScan scan;
  scan.ranges.assign(spec.beams, spec.max_range);
  scan.mask.assign(spec.beams, std::nullopt);

  const Vector2 origin = pose.position() + from_polar(spec.mount_x, pose.theta);
  const auto walls = world.walls();
  std::normal_distribution<double> noise(0.0, spec.range_noise > 0.0 ? spec.range_noise : 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  for (int beam = 0; beam < spec.beams; ++beam) {
    const Vector2 dir = from_polar(1.0, pose.theta + spec.mount_yaw + lidar_beam_angle(spec, beam));
    double best = std::numeric_limits<double>::infinity();
    std::optional<int> hit_id;
    for (const auto& wall : walls) {
      const double t = ray_segment(origin, dir, wall);
      if (t >= 0.0 && t < best) best = t;
    }
    for (const auto& a : agents) {
      const double t = ray_circle(origin, dir, a.position, a.radius);
      if (t >= 0.0 && t < best) {
        best = t;
        hit_id = a.id;
      }
    }
    if (!(best <= spec.max_range)) continue;

    double range = best;
    if (spec.range_noise > 0.0) range += noise(rng);
    if (spec.dropout > 0.0 && unit(rng) < spec.dropout) continue;
    scan.ranges[beam] = std::clamp(range, std::numeric_limits<double>::min(), spec.max_range);
    scan.mask[beam] = hit_id;
  }
  return scan;
}

}  // namespace crowdbench
