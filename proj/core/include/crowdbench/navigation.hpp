#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "crowdbench/crowd_models.hpp"
#include "crowdbench/world.hpp"

namespace crowdbench {

struct GoalSpec {
  Vector2 axis{1.0, 0.0};
  double target_progress = 40.0;
  double time_limit = 180.0;
};

enum class ControllerKind { Baseline, Dwa, Rvo };

const char* to_string(ControllerKind kind);
ControllerKind controller_kind_from_string(const std::string& name);

struct DwaParams {
  int v_samples = 11;
  int w_samples = 21;
  double heading_weight = 0.8;
  double clearance_weight = 0.1;
  double velocity_weight = 0.1;
  double horizon = 1.5;         // s
  double clearance_cap = 3.0;   // m
  double wall_spacing = 0.25;   // m between wall sample points
};

struct RvoCtrlParams {
  double horizon = 1.5;
  double preferred_speed = 1.0;
  double neighbor_range = 5.0;
  int max_neighbors = 10;
  double responsibility = 0.5;
};

struct NavParams {
  double heading_gain = 2.0;  // 1/s
  DwaParams dwa;
  RvoCtrlParams rvo;
};

/// Ground-truth snapshot a controller decides from.
struct NavView {
  const RobotState& robot;
  std::span<const AgentState> agents;
  const WorldSpec& world;
  const GoalSpec& goal;
  const RobotLimits& limits;
  double dt;
};

/// Turns toward the desired velocity and drives at its magnitude scaled by
/// the cosine of the heading error.
VelocityCommand project_to_diff_drive(const Vector2& desired, const RobotState& robot,
                                      const RobotLimits& limits, double heading_gain);

VelocityCommand baseline_command(const RobotState& robot, const GoalSpec& goal,
                                 const RobotLimits& limits, double heading_gain);

VelocityCommand rvo_command(const RobotState& robot, std::span<const AgentState> agents,
                            const GoalSpec& goal, const RobotLimits& limits,
                            const RvoCtrlParams& params, double heading_gain, double dt);

// ---------------------------------------------------------------------------
// Dynamic window

/// Static disc obstacle, already inflated by the robot radius.
struct DwaObstacle {
  Vector2 center;
  double radius = 0.0;
};

/// Agents inflated by agent + robot radius, plus wall sample points inflated
/// by the robot radius, limited to those that can matter within `reach`.
std::vector<DwaObstacle> dwa_obstacles(const RobotState& robot, std::span<const AgentState> agents,
                                       const WorldSpec& world, const DwaParams& params);

/// Path length along the circular arc (v, w) from `pose` until the robot
/// center enters the obstacle disc, capped at `cap`. Zero when already inside.
double arc_clearance(const Pose& pose, double v, double w, const DwaObstacle& obstacle, double cap);

struct DwaCandidate {
  VelocityCommand command;
  double heading = 0.0;    // raw, in [0, pi]
  double clearance = 0.0;  // raw, m
  double velocity = 0.0;   // raw, m/s
  bool admissible = false;
  double score = 0.0;      // normalized objective (admissible only)
};

/// Every sampled pair of the dynamic window with its raw terms, admissibility
/// and normalized objective.
std::vector<DwaCandidate> dwa_window(const RobotState& robot, std::span<const DwaObstacle> obstacles,
                                     const GoalSpec& goal, const RobotLimits& limits,
                                     const DwaParams& params, double dt);

struct DwaDecision {
  VelocityCommand command;
  bool emergency_stop = false;
};

DwaDecision dwa_command(const RobotState& robot, std::span<const DwaObstacle> obstacles,
                        const GoalSpec& goal, const RobotLimits& limits, const DwaParams& params,
                        double dt);

// ---------------------------------------------------------------------------

class Controller {
 public:
  virtual ~Controller() = default;
  virtual ControllerKind kind() const = 0;
  virtual VelocityCommand command(const NavView& view) = 0;
};

std::unique_ptr<Controller> make_controller(ControllerKind kind, const NavParams& params);

}  // namespace crowdbench
