#pragma once

#include <optional>
#include <span>
#include <vector>

#include "crowdbench/crowd_config.hpp"
#include "crowdbench/neighbor_grid.hpp"
#include "crowdbench/world.hpp"

namespace crowdbench {

/// Disc seen by a crowd member or by the robot's avoidance.
struct Neighbor {
  int id = 0;
  Vector2 position;
  Vector2 velocity;
  double radius = 0.0;
};

/// Robot id used when the robot appears as a neighbor.
inline constexpr int kRobotId = -1;

/// Smallest t >= 0 at which |rel_position + t * rel_velocity| equals
/// combined_radius; 0 when already overlapping, nullopt when never.
std::optional<double> ttc_circle(const Vector2& rel_position, const Vector2& rel_velocity,
                                 double combined_radius);

// ---------------------------------------------------------------------------
// Social forces

Vector2 social_forces_accel(const AgentState& agent, std::span<const Neighbor> neighbors,
                            const WorldSpec& world, const SocialForceParams& params);

// ---------------------------------------------------------------------------
// Sampled reciprocal velocity obstacles

struct VelocityCandidate {
  Vector2 velocity;
  double cost = 0.0;
};

/// Candidate set: preferred velocity, zero, then a polar grid around the goal
/// direction (directions x speeds).
std::vector<Vector2> rvo_candidates(const AgentState& agent, const RvoSamplingParams& params);

double rvo_candidate_cost(const Vector2& candidate, const AgentState& agent,
                          std::span<const Neighbor> neighbors, double horizon,
                          const RvoSamplingParams& params);

/// Lowest-cost candidate; ties go to the earliest candidate index.
VelocityCandidate rvo_sampled_velocity(const AgentState& agent, std::span<const Neighbor> neighbors,
                                       double horizon, const RvoSamplingParams& params);

// ---------------------------------------------------------------------------
// ORCA

/// Directed line; the permitted half-plane lies to its left.
struct OrcaLine {
  Vector2 point;
  Vector2 direction;
};

struct OrcaAgent {
  Vector2 position;
  Vector2 velocity;
  double radius = 0.3;
  double max_speed = 1.4;
  Vector2 preferred_velocity;
};

struct OrcaOptions {
  double horizon = 1.5;
  double time_step = 0.05;
  /// Share of the avoidance this agent takes on (0.5 = reciprocal).
  double responsibility = 0.5;
};

std::vector<OrcaLine> orca_lines(const OrcaAgent& agent, std::span<const Neighbor> neighbors,
                                 const OrcaOptions& options);

/// Velocity closest to the preferred one inside every ORCA half-plane and the
/// max-speed disc; least-violating velocity when the constraints conflict.
Vector2 orca_velocity(const OrcaAgent& agent, std::span<const Neighbor> neighbors,
                      const OrcaOptions& options);

/// Solves the 2D program for a prepared set of lines.
Vector2 solve_orca_program(std::span<const OrcaLine> lines, double max_speed,
                           const Vector2& preferred_velocity);

// ---------------------------------------------------------------------------
// Per-step crowd update

/// Frozen previous-step state shared by every agent decision of one step.
/// The grid indexes agents by position in `agents`; when a robot is present
/// it is entity `agents.size()`.
struct CrowdView {
  std::span<const AgentState> agents;
  std::optional<Neighbor> robot;
  const NeighborGrid* grid = nullptr;
  WorldSpec world;
};

/// Builds the grid for a view: agents followed by the robot, if any.
void build_crowd_grid(NeighborGrid& grid, std::span<const AgentState> agents,
                      const std::optional<Neighbor>& robot);

/// Indices of entities within range of `position` (inclusive), ascending,
/// excluding `self`. The robot index appears only when include_robot is set.
std::vector<int> neighbors_within(const CrowdView& view, const Vector2& position, double range,
                                  int self, bool include_robot);

/// Neighbor discs of agent `index`, nearest first, at most `limit` entries
/// (limit <= 0 keeps all).
std::vector<Neighbor> gather_neighbors(const CrowdView& view, int index,
                                       const CrowdModelConfig& config, int limit);

Vector2 update_agent_velocity(const CrowdView& view, int index, const CrowdModelConfig& config,
                              double dt);

}  // namespace crowdbench
