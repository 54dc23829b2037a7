#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "crowdbench/navigation.hpp"

namespace crowdbench {

const char* to_string(ControllerKind kind) {
  switch (kind) {
    case ControllerKind::Baseline: return "baseline";
    case ControllerKind::Dwa: return "dwa";
    case ControllerKind::Rvo: return "rvo";
  }
  return "baseline";
}

ControllerKind controller_kind_from_string(const std::string& name) {
  if (name == "baseline") return ControllerKind::Baseline;
  if (name == "dwa") return ControllerKind::Dwa;
  if (name == "rvo") return ControllerKind::Rvo;
  throw std::invalid_argument("unknown controller '" + name + "'");
}

VelocityCommand project_to_diff_drive(const Vector2& desired, const RobotState& robot,
                                      const RobotLimits& limits, double heading_gain) {
  const double speed = norm(desired);
  if (speed == 0.0) return {};
  const double error = wrap_angle(std::atan2(desired.y, desired.x) - robot.pose.theta);
  VelocityCommand cmd;
  cmd.w = std::clamp(heading_gain * error, -limits.w_max, limits.w_max);
  cmd.v = std::clamp(speed * std::max(0.0, std::cos(error)), limits.v_min, limits.v_max);
  return cmd;
}

VelocityCommand baseline_command(const RobotState& robot, const GoalSpec& goal,
                                 const RobotLimits& limits, double heading_gain) {
  return project_to_diff_drive(normalized(goal.axis) * limits.v_max, robot, limits, heading_gain);
}

VelocityCommand rvo_command(const RobotState& robot, std::span<const AgentState> agents,
                            const GoalSpec& goal, const RobotLimits& limits,
                            const RvoCtrlParams& params, double heading_gain, double dt) {
  struct Entry {
    double d2;
    int idx;
  };
  std::vector<Entry> near;
  const Vector2 p = robot.position();
  const double range_sq = params.neighbor_range * params.neighbor_range;
  for (int i = 0; i < static_cast<int>(agents.size()); ++i) {
    const double d2 = abs_sq(agents[i].position - p);
    if (d2 <= range_sq) near.push_back({d2, i});
  }
  std::sort(near.begin(), near.end(), [&](const Entry& a, const Entry& b) {
    return a.d2 != b.d2 ? a.d2 < b.d2 : agents[a.idx].id < agents[b.idx].id;
  });
  if (params.max_neighbors > 0 && static_cast<int>(near.size()) > params.max_neighbors) {
    near.resize(params.max_neighbors);
  }
  std::vector<Neighbor> neighbors;
  neighbors.reserve(near.size());
  for (const auto& e : near) {
    const auto& a = agents[e.idx];
    neighbors.push_back({a.id, a.position, a.velocity, a.radius});
  }

  const double speed = std::min(params.preferred_speed, limits.v_max);
  const OrcaAgent self{p, robot.world_velocity(), robot.radius, speed,
                       normalized(goal.axis) * speed};
  const Vector2 desired =
      orca_velocity(self, neighbors, {params.horizon, dt, params.responsibility});
  return project_to_diff_drive(desired, robot, limits, heading_gain);
}

namespace {

class BaselineController final : public Controller {
 public:
  explicit BaselineController(const NavParams& params) : params_(params) {}
  ControllerKind kind() const override { return ControllerKind::Baseline; }
  VelocityCommand command(const NavView& view) override {
    return baseline_command(view.robot, view.goal, view.limits, params_.heading_gain);
  }

 private:
  NavParams params_;
};

class DwaController final : public Controller {
 public:
  explicit DwaController(const NavParams& params) : params_(params) {}
  ControllerKind kind() const override { return ControllerKind::Dwa; }
  VelocityCommand command(const NavView& view) override {
    const auto obstacles = dwa_obstacles(view.robot, view.agents, view.world, params_.dwa);
    return dwa_command(view.robot, obstacles, view.goal, view.limits, params_.dwa, view.dt).command;
  }

 private:
  NavParams params_;
};

class RvoController final : public Controller {
 public:
  explicit RvoController(const NavParams& params) : params_(params) {}
  ControllerKind kind() const override { return ControllerKind::Rvo; }
  VelocityCommand command(const NavView& view) override {
    return rvo_command(view.robot, view.agents, view.goal, view.limits, params_.rvo,
                       params_.heading_gain, view.dt);
  }

 private:
  NavParams params_;
};

}  // namespace

std::unique_ptr<Controller> make_controller(ControllerKind kind, const NavParams& params) {
  switch (kind) {
    case ControllerKind::Baseline: return std::make_unique<BaselineController>(params);
    case ControllerKind::Dwa: return std::make_unique<DwaController>(params);
    case ControllerKind::Rvo: return std::make_unique<RvoController>(params);
  }
  throw std::invalid_argument("unknown controller kind");
}

}  // namespace crowdbench
