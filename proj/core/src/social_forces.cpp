#include <cmath>

#include "crowdbench/crowd_models.hpp"

namespace crowdbench {

Vector2 social_forces_accel(const AgentState& agent, std::span<const Neighbor> neighbors,
                            const WorldSpec& world, const SocialForceParams& params) {
  Vector2 accel = (agent.preferred_velocity() - agent.velocity) / params.tau_relax;

  for (const auto& other : neighbors) {
    const Vector2 delta = agent.position - other.position;
    const double d = norm(delta);
    const Vector2 n = d > 0.0 ? delta / d : Vector2{1.0, 0.0};
    accel += n * (params.strength * std::exp((agent.radius + other.radius - d) / params.range));
  }

  // Only the walls parallel to the flow push back; the others are crossed.
  const auto wall_push = [&](double distance) {
    return params.strength * std::exp((agent.radius - distance) / params.wall_range);
  };
  if (flows_along_x(agent.flow_group)) {
    accel.y += wall_push(agent.position.y) - wall_push(world.width - agent.position.y);
  } else {
    accel.x += wall_push(agent.position.x) - wall_push(world.length - agent.position.x);
  }
  return accel;
}

}  // namespace crowdbench
