#include <algorithm>
#include <cmath>
#include <limits>

#include "crowdbench/crowd_models.hpp"

namespace crowdbench {

std::vector<Vector2> rvo_candidates(const AgentState& agent, const RvoSamplingParams& params) {
  std::vector<Vector2> out;
  out.reserve(2 + static_cast<std::size_t>(params.directions) * params.speeds);
  out.push_back(agent.preferred_velocity());
  out.push_back({0.0, 0.0});
  const double heading = std::atan2(agent.goal_direction.y, agent.goal_direction.x);
  const double top = agent.preferred_speed * params.speed_factor;
  for (int d = 0; d < params.directions; ++d) {
    const Vector2 dir = from_polar(1.0, heading + 2.0 * M_PI * d / params.directions);
    for (int s = 1; s <= params.speeds; ++s) {
      out.push_back(dir * (top * s / params.speeds));
    }
  }
  return out;
}

double rvo_candidate_cost(const Vector2& candidate, const AgentState& agent,
                          std::span<const Neighbor> neighbors, double horizon,
                          const RvoSamplingParams& params) {
  // Reciprocity: the agent expects the neighbor to take half the avoidance,
  // so the candidate is tested as 2c - v against the neighbor's current velocity.
  const Vector2 reciprocal = candidate * 2.0 - agent.velocity;
  double ttc_min = std::numeric_limits<double>::infinity();
  for (const auto& other : neighbors) {
    const auto t = ttc_circle(agent.position - other.position, reciprocal - other.velocity,
                              agent.radius + other.radius);
    if (t && *t < ttc_min) ttc_min = *t;
  }
  double penalty = 0.0;
  if (ttc_min < horizon) penalty = params.collision_weight / std::max(ttc_min, params.min_ttc);
  return penalty + norm(candidate - agent.preferred_velocity());
}

VelocityCandidate rvo_sampled_velocity(const AgentState& agent, std::span<const Neighbor> neighbors,
                                       double horizon, const RvoSamplingParams& params) {
  // Same result as scoring every candidate with rvo_candidate_cost; candidates
  // that provably cannot beat the incumbent are abandoned early.
  VelocityCandidate best{agent.preferred_velocity(), std::numeric_limits<double>::infinity()};
  const Vector2 pref = agent.preferred_velocity();
  for (const auto& c : rvo_candidates(agent, params)) {
    const double deviation = norm(c - pref);
    if (deviation >= best.cost) continue;
    const Vector2 reciprocal = c * 2.0 - agent.velocity;
    double ttc_min = std::numeric_limits<double>::infinity();
    bool pruned = false;
    for (const auto& other : neighbors) {
      const auto t = ttc_circle(agent.position - other.position, reciprocal - other.velocity,
                                agent.radius + other.radius);
      if (!t || *t >= ttc_min) continue;
      ttc_min = *t;
      if (ttc_min < horizon &&
          params.collision_weight / std::max(ttc_min, params.min_ttc) + deviation >= best.cost) {
        pruned = true;
        break;
      }
    }
    if (pruned) continue;
    double penalty = 0.0;
    if (ttc_min < horizon) penalty = params.collision_weight / std::max(ttc_min, params.min_ttc);
    const double cost = penalty + deviation;
    if (cost < best.cost) best = {c, cost};
  }
  return best;
}

}  // namespace crowdbench
