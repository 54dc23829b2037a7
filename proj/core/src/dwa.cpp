#include <algorithm>
#include <cmath>
#include <limits>

#include "crowdbench/kinematics.hpp"
#include "crowdbench/navigation.hpp"

namespace crowdbench {

std::vector<DwaObstacle> dwa_obstacles(const RobotState& robot, std::span<const AgentState> agents,
                                       const WorldSpec& world, const DwaParams& params) {
  std::vector<DwaObstacle> out;
  const Vector2 p = robot.position();
  const auto relevant = [&](const Vector2& c, double r) {
    return norm(c - p) - r <= params.clearance_cap;
  };
  for (const auto& a : agents) {
    const double r = a.radius + robot.radius;
    if (relevant(a.position, r)) out.push_back({a.position, r});
  }
  for (const auto& wall : world.walls()) {
    const Vector2 span = wall.b - wall.a;
    const int n = std::max(1, static_cast<int>(std::ceil(norm(span) / params.wall_spacing)));
    for (int k = 0; k <= n; ++k) {
      const Vector2 c = wall.a + span * (static_cast<double>(k) / n);
      if (relevant(c, robot.radius)) out.push_back({c, robot.radius});
    }
  }
  return out;
}

double arc_clearance(const Pose& pose, double v, double w, const DwaObstacle& obstacle, double cap) {
  const Vector2 p = pose.position();
  const Vector2 to_obstacle = obstacle.center - p;
  const double r = obstacle.radius;
  if (abs_sq(to_obstacle) <= r * r) return 0.0;
  if (v == 0.0) return cap;

  const Vector2 heading{std::cos(pose.theta), std::sin(pose.theta)};
  const double curvature = w / v;
  if (std::abs(curvature) < 1e-9) {
    const Vector2 dir = v > 0.0 ? heading : -heading;
    const double b = dot(to_obstacle, dir);
    if (b <= 0.0) return cap;
    const double disc = b * b - (abs_sq(to_obstacle) - r * r);
    if (disc < 0.0) return cap;
    return std::min(cap, b - std::sqrt(disc));
  }

  // Robot center travels on a circle of radius |rho| around `center`; the
  // polar angle of the robot about that center advances at rate w.
  const double rho = v / w;
  const Vector2 center = p + Vector2{-heading.y, heading.x} * rho;
  const double radius = std::abs(rho);
  const Vector2 oc = obstacle.center - center;
  const double d = norm(oc);
  if (d > radius + r || d < std::abs(radius - r) || d == 0.0) return cap;

  const double cos_gamma = std::clamp((radius * radius + d * d - r * r) / (2.0 * radius * d), -1.0, 1.0);
  const double gamma = std::acos(cos_gamma);
  const double beta = std::atan2(oc.y, oc.x);
  const Vector2 pc = p - center;
  const double start = std::atan2(pc.y, pc.x);
  const double sense = w > 0.0 ? 1.0 : -1.0;
  double best = std::numeric_limits<double>::infinity();
  for (const double hit : {beta - gamma, beta + gamma}) {
    double swept = std::fmod(sense * (hit - start), 2.0 * M_PI);
    if (swept < 0.0) swept += 2.0 * M_PI;
    best = std::min(best, swept);
  }
  return std::min(cap, best * radius);
}

namespace {

std::vector<double> samples(double lo, double hi, int n) {
  if (n <= 1 || hi <= lo) return {lo};
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = lo + (hi - lo) * i / (n - 1);
  out.back() = hi;
  return out;
}

void normalize_term(std::vector<DwaCandidate>& window, double DwaCandidate::*term,
                    std::vector<double>& out) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& c : window) {
    if (!c.admissible) continue;
    lo = std::min(lo, c.*term);
    hi = std::max(hi, c.*term);
  }
  out.assign(window.size(), 0.0);
  if (!(hi > lo)) return;
  for (std::size_t i = 0; i < window.size(); ++i) {
    if (window[i].admissible) out[i] = (window[i].*term - lo) / (hi - lo);
  }
}

}  // namespace

std::vector<DwaCandidate> dwa_window(const RobotState& robot, std::span<const DwaObstacle> obstacles,
                                     const GoalSpec& goal, const RobotLimits& limits,
                                     const DwaParams& params, double dt) {
  const double v_lo = std::max(limits.v_min, robot.v - limits.a_max * dt);
  const double v_hi = std::min(limits.v_max, robot.v + limits.a_max * dt);
  const double w_lo = std::max(-limits.w_max, robot.w - limits.alpha_max * dt);
  const double w_hi = std::min(limits.w_max, robot.w + limits.alpha_max * dt);
  const double goal_heading = std::atan2(goal.axis.y, goal.axis.x);

  std::vector<DwaCandidate> window;
  for (const double v : samples(v_lo, v_hi, params.v_samples)) {
    for (const double w : samples(w_lo, w_hi, params.w_samples)) {
      DwaCandidate c;
      c.command = {v, w};
      double clearance = params.clearance_cap;
      for (const auto& o : obstacles) {
        clearance = std::min(clearance, arc_clearance(robot.pose, v, w, o, params.clearance_cap));
      }
      c.clearance = clearance;
      c.admissible = clearance >= v * v / (2.0 * limits.a_max);
      const double end_heading = robot.pose.theta + w * params.horizon;
      c.heading = M_PI - std::abs(wrap_angle(goal_heading - end_heading));
      c.velocity = v;
      window.push_back(c);
    }
  }

  std::vector<double> heading, clearance, velocity;
  normalize_term(window, &DwaCandidate::heading, heading);
  normalize_term(window, &DwaCandidate::clearance, clearance);
  normalize_term(window, &DwaCandidate::velocity, velocity);
  for (std::size_t i = 0; i < window.size(); ++i) {
    if (!window[i].admissible) continue;
    window[i].score = params.heading_weight * heading[i] + params.clearance_weight * clearance[i] +
                      params.velocity_weight * velocity[i];
  }
  return window;
}

DwaDecision dwa_command(const RobotState& robot, std::span<const DwaObstacle> obstacles,
                        const GoalSpec& goal, const RobotLimits& limits, const DwaParams& params,
                        double dt) {
  const auto window = dwa_window(robot, obstacles, goal, limits, params, dt);
  const DwaCandidate* best = nullptr;
  const auto preferred = [](const DwaCandidate& a, const DwaCandidate& b) {
    if (a.score != b.score) return a.score > b.score;
    const double wa = std::abs(a.command.w);
    const double wb = std::abs(b.command.w);
    if (wa != wb) return wa < wb;
    if (a.command.v != b.command.v) return a.command.v < b.command.v;
    return a.command.w < b.command.w;
  };
  for (const auto& c : window) {
    if (c.admissible && (best == nullptr || preferred(c, *best))) best = &c;
  }
  if (best == nullptr) {
    return {{std::max(limits.v_min, robot.v - limits.a_max * dt), 0.0}, true};
  }
  return {best->command, false};
}

}  // namespace crowdbench
