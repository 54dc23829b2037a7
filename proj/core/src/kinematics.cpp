#include "crowdbench/kinematics.hpp"

#include <algorithm>
#include <cmath>

namespace crowdbench {

Pose integrate_diff_drive(const Pose& pose, double v, double w, double dt) {
  if (std::abs(w) < kStraightLineOmega) {
    return {pose.x + v * dt * std::cos(pose.theta), pose.y + v * dt * std::sin(pose.theta),
            pose.theta + w * dt};
  }
  const double theta_next = pose.theta + w * dt;
  const double r = v / w;
  return {pose.x + r * (std::sin(theta_next) - std::sin(pose.theta)),
          pose.y - r * (std::cos(theta_next) - std::cos(pose.theta)), theta_next};
}

VelocityCommand clamp_command(const VelocityCommand& previous, const VelocityCommand& commanded,
                              const RobotLimits& limits, double dt) {
  const double dv = limits.a_max * dt;
  const double dw = limits.alpha_max * dt;
  VelocityCommand out;
  out.v = std::clamp(commanded.v, previous.v - dv, previous.v + dv);
  out.v = std::clamp(out.v, limits.v_min, limits.v_max);
  out.w = std::clamp(commanded.w, previous.w - dw, previous.w + dw);
  out.w = std::clamp(out.w, -limits.w_max, limits.w_max);
  return out;
}

bool clamp_to_walls(Pose& pose, double radius, const WorldSpec& world) {
  const double x = std::clamp(pose.x, radius, world.length - radius);
  const double y = std::clamp(pose.y, radius, world.width - radius);
  const bool clamped = x != pose.x || y != pose.y;
  pose.x = x;
  pose.y = y;
  return clamped;
}

}  // namespace crowdbench
