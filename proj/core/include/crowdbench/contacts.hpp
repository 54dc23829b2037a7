#pragma once

#include <span>
#include <vector>

#include "crowdbench/world.hpp"

namespace crowdbench {

struct OverlapParams {
  double agent_mass = 70.0;
  /// A kinematic robot is not displaced by contacts (infinite effective mass).
  bool robot_kinematic = true;
  int iterations = 8;
};

/// Distance beyond exact touching that still counts as contact. Overlap
/// resolution leaves pairs touching, so a sustained push stays one contact.
inline constexpr double kContactSlop = 1e-4;

/// Moves `a` and `b` apart along their line of centers until they are
/// `min_distance` apart, splitting the correction by inverse mass. A zero
/// inverse mass pins that body. Coincident centers separate along +x.
void separate_pair(Vector2& a, double inv_mass_a, Vector2& b, double inv_mass_b,
                   double min_distance);

/// Robot-agent contacts at the current positions. `previous` is the contact
/// set of the last step and decides onset.
ContactSet detect_robot_contacts(const RobotState& robot, std::span<const AgentState> agents,
                                 const ContactSet& previous);

/// Position-based relaxation of agent-agent and robot-agent penetration.
void resolve_overlaps(std::vector<AgentState>& agents, RobotState& robot, const WorldSpec& world,
                      const OverlapParams& params);

/// Wraps the coordinate along the group's flow axis into the corridor.
Vector2 wrap_agent(const Vector2& position, FlowGroup group, const WorldSpec& world);

/// Keeps the coordinate across the flow axis inside the corridor walls.
Vector2 clamp_agent_transverse(const Vector2& position, double radius, FlowGroup group,
                               const WorldSpec& world);

}  // namespace crowdbench
