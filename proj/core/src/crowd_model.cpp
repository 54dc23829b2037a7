#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "crowdbench/crowd_models.hpp"

namespace crowdbench {

const char* to_string(CrowdAlgorithm algorithm) {
  switch (algorithm) {
    case CrowdAlgorithm::SocialForces: return "social_forces";
    case CrowdAlgorithm::RvoSampled: return "rvo_sampled";
    case CrowdAlgorithm::Orca: return "orca";
  }
  return "rvo_sampled";
}

CrowdAlgorithm crowd_algorithm_from_string(const std::string& name) {
  if (name == "social_forces") return CrowdAlgorithm::SocialForces;
  if (name == "rvo_sampled") return CrowdAlgorithm::RvoSampled;
  if (name == "orca") return CrowdAlgorithm::Orca;
  throw std::invalid_argument("unknown crowd algorithm '" + name + "'");
}

void build_crowd_grid(NeighborGrid& grid, std::span<const AgentState> agents,
                      const std::optional<Neighbor>& robot) {
  std::vector<Vector2> positions;
  positions.reserve(agents.size() + 1);
  for (const auto& a : agents) positions.push_back(a.position);
  if (robot) positions.push_back(robot->position);
  grid.build(positions);
}

std::vector<int> neighbors_within(const CrowdView& view, const Vector2& position, double range,
                                  int self, bool include_robot) {
  const int robot_index = static_cast<int>(view.agents.size());
  std::vector<int> out;
  view.grid->for_each_within(position, range, [&](int idx, double) {
    if (idx == self) return;
    if (idx == robot_index && !include_robot) return;
    out.push_back(idx);
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Neighbor> gather_neighbors(const CrowdView& view, int index,
                                       const CrowdModelConfig& config, int limit) {
  const AgentState& self = view.agents[index];
  const int robot_index = static_cast<int>(view.agents.size());
  const bool with_robot = config.reactive_to_robot && view.robot.has_value();

  struct Entry {
    double d2;
    int idx;
  };
  std::vector<Entry> found;
  view.grid->for_each_within(self.position, config.interaction_range, [&](int idx, double d2) {
    if (idx == index) return;
    if (idx == robot_index && !with_robot) return;
    found.push_back({d2, idx});
  });
  const auto closer = [](const Entry& a, const Entry& b) {
    return a.d2 != b.d2 ? a.d2 < b.d2 : a.idx < b.idx;
  };
  if (limit > 0 && static_cast<int>(found.size()) > limit) {
    std::partial_sort(found.begin(), found.begin() + limit, found.end(), closer);
    found.resize(limit);
  } else {
    std::sort(found.begin(), found.end(), closer);
  }

  std::vector<Neighbor> out;
  out.reserve(found.size());
  for (const auto& e : found) {
    if (e.idx == robot_index) {
      out.push_back(*view.robot);
    } else {
      const AgentState& a = view.agents[e.idx];
      out.push_back({a.id, a.position, a.velocity, a.radius});
    }
  }
  return out;
}

namespace {

Vector2 cap_speed(const Vector2& v, double cap) {
  const double s = norm(v);
  return s > cap ? v * (cap / s) : v;
}

Vector2 limit_change(const Vector2& from, const Vector2& to, double max_delta) {
  const Vector2 delta = to - from;
  const double d = norm(delta);
  return d > max_delta ? from + delta * (max_delta / d) : to;
}

}  // namespace

Vector2 update_agent_velocity(const CrowdView& view, int index, const CrowdModelConfig& config,
                              double dt) {
  const AgentState& agent = view.agents[index];
  const double cap = agent.preferred_speed * kAgentSpeedCapFactor;

  switch (config.algorithm) {
    case CrowdAlgorithm::SocialForces: {
      const auto neighbors = gather_neighbors(view, index, config, 0);
      const Vector2 accel = social_forces_accel(agent, neighbors, view.world, config.social_forces);
      return cap_speed(agent.velocity + accel * dt, cap);
    }
    case CrowdAlgorithm::RvoSampled: {
      const auto neighbors = gather_neighbors(view, index, config, config.max_neighbors);
      const auto choice = rvo_sampled_velocity(agent, neighbors, config.horizon, config.rvo);
      return cap_speed(limit_change(agent.velocity, choice.velocity, config.max_accel * dt), cap);
    }
    case CrowdAlgorithm::Orca: {
      const auto neighbors = gather_neighbors(view, index, config, config.max_neighbors);
      const OrcaAgent self{agent.position, agent.velocity, agent.radius, agent.preferred_speed,
                           agent.preferred_velocity()};
      const Vector2 v = orca_velocity(self, neighbors, {config.horizon, dt > 0.0 ? dt : 0.05, 0.5});
      return cap_speed(limit_change(agent.velocity, v, config.max_accel * dt), cap);
    }
  }
  return agent.velocity;
}

}  // namespace crowdbench
