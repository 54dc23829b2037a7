#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "crowdbench/vector2.hpp"

namespace crowdbench {

/// Goal-direction group of a crowd member. The axis of the group is the axis
/// the member wraps along when it leaves the corridor.
enum class FlowGroup { PlusX, MinusX, PlusY, MinusY };

Vector2 flow_direction(FlowGroup group);
bool flows_along_x(FlowGroup group);
const char* to_string(FlowGroup group);
FlowGroup flow_group_from_string(const std::string& name);

struct Segment {
  Vector2 a;
  Vector2 b;
};

/// Axis-aligned corridor [0, length] x [0, width].
struct WorldSpec {
  double length = 50.0;
  double width = 10.0;

  /// Bottom, right, top, left.
  std::array<Segment, 4> walls() const;
  bool contains(const Vector2& p) const {
    return p.x >= 0.0 && p.x <= length && p.y >= 0.0 && p.y <= width;
  }
};

struct AgentState {
  int id = 0;
  Vector2 position;
  Vector2 velocity;
  double radius = 0.3;
  double preferred_speed = 1.4;
  Vector2 goal_direction{1.0, 0.0};
  FlowGroup flow_group = FlowGroup::PlusX;

  Vector2 preferred_velocity() const { return goal_direction * preferred_speed; }
};

/// Hard cap on crowd member speed relative to its preferred speed.
inline constexpr double kAgentSpeedCapFactor = 1.3;

struct Pose {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;

  Vector2 position() const { return {x, y}; }
  bool operator==(const Pose&) const = default;
};

struct VelocityCommand {
  double v = 0.0;
  double w = 0.0;
  bool operator==(const VelocityCommand&) const = default;
};

struct RobotLimits {
  double v_max = 1.0;
  double v_min = 0.0;
  double a_max = 5.0;
  double w_max = 2.0 * M_PI;
  double alpha_max = 2.0 * M_PI;
};

struct RobotState {
  Pose pose;
  double v = 0.0;
  double w = 0.0;
  double radius = 0.18;
  double mass = 20.0;
  double top_height = 0.42;

  Vector2 position() const { return pose.position(); }
  Vector2 world_velocity() const;
};

struct SimClock {
  double dt = 0.05;
  std::int64_t step_index = 0;

  double t() const { return static_cast<double>(step_index) * dt; }
};

struct Contact {
  int agent_id = 0;
  double depth = 0.0;
  Vector2 normal;  // robot -> agent
  double v_rel = 0.0;
  bool onset = false;
};

using ContactSet = std::vector<Contact>;

struct AgentRecord {
  int id = 0;
  double x = 0.0;
  double y = 0.0;
  double vx = 0.0;
  double vy = 0.0;
};

struct RobotRecord {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
  double v = 0.0;
  double w = 0.0;
};

struct LidarScan {
  std::vector<double> ranges;
  std::vector<std::optional<int>> mask;
};

struct StepRecord {
  double t = 0.0;
  RobotRecord robot;
  std::vector<AgentRecord> agents;
  ContactSet contacts;
  std::optional<LidarScan> lidar;
};

/// Raised when the state of a run stops being finite.
class SimulationDiverged : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace crowdbench
