#include "crowdbench/contacts.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "crowdbench/neighbor_grid.hpp"

namespace crowdbench {

void separate_pair(Vector2& a, double inv_mass_a, Vector2& b, double inv_mass_b,
                   double min_distance) {
  const double total = inv_mass_a + inv_mass_b;
  if (total <= 0.0) return;
  const Vector2 delta = a - b;
  const double d = norm(delta);
  if (d >= min_distance) return;
  const Vector2 n = d > 0.0 ? delta / d : Vector2{1.0, 0.0};
  const double depth = min_distance - d;
  a += n * (depth * inv_mass_a / total);
  b -= n * (depth * inv_mass_b / total);
}

ContactSet detect_robot_contacts(const RobotState& robot, std::span<const AgentState> agents,
                                 const ContactSet& previous) {
  std::unordered_set<int> was_touching;
  for (const auto& c : previous) was_touching.insert(c.agent_id);

  ContactSet out;
  const Vector2 rp = robot.position();
  const Vector2 rv = robot.world_velocity();
  for (const auto& agent : agents) {
    const double reach = robot.radius + agent.radius;
    const Vector2 delta = agent.position - rp;
    const double d2 = abs_sq(delta);
    if (d2 > (reach + kContactSlop) * (reach + kContactSlop)) continue;
    const double d = std::sqrt(d2);
    Contact c;
    c.agent_id = agent.id;
    c.depth = std::max(0.0, reach - d);
    c.normal = d > 0.0 ? delta / d : Vector2{1.0, 0.0};
    c.v_rel = std::max(0.0, dot(rv - agent.velocity, c.normal));
    c.onset = !was_touching.contains(agent.id);
    out.push_back(c);
  }
  return out;
}

void resolve_overlaps(std::vector<AgentState>& agents, RobotState& robot, const WorldSpec& world,
                      const OverlapParams& params) {
  if (agents.empty()) return;
  double max_radius = robot.radius;
  for (const auto& a : agents) max_radius = std::max(max_radius, a.radius);

  // Candidate pairs are gathered once; the relaxation moves bodies by at
  // most a penetration depth, so the margin keeps the set complete.
  const double reach = 2.0 * max_radius;
  std::vector<Vector2> positions;
  positions.reserve(agents.size());
  for (const auto& a : agents) positions.push_back(a.position);
  NeighborGrid grid(world, std::max(1.0, reach));
  grid.build(positions);

  std::vector<std::pair<int, int>> pairs;
  std::vector<int> robot_candidates;
  for (int i = 0; i < static_cast<int>(agents.size()); ++i) {
    grid.for_each_within(positions[i], reach, [&](int j, double) {
      if (j > i) pairs.emplace_back(i, j);
    });
  }
  grid.for_each_within(robot.position(), reach + 0.5, [&](int j, double) {
    robot_candidates.push_back(j);
  });
  std::sort(pairs.begin(), pairs.end(), [&](const auto& p, const auto& q) {
    const auto key = [&](const auto& e) {
      const int a = agents[e.first].id;
      const int b = agents[e.second].id;
      return std::pair{std::min(a, b), std::max(a, b)};
    };
    return key(p) < key(q);
  });
  std::sort(robot_candidates.begin(), robot_candidates.end(),
            [&](int a, int b) { return agents[a].id < agents[b].id; });

  const double inv_agent = 1.0 / params.agent_mass;
  const double inv_robot = params.robot_kinematic ? 0.0 : 1.0 / robot.mass;
  Vector2 robot_pos = robot.position();
  for (int iter = 0; iter < params.iterations; ++iter) {
    for (const auto& [i, j] : pairs) {
      separate_pair(agents[i].position, inv_agent, agents[j].position, inv_agent,
                    agents[i].radius + agents[j].radius);
    }
    for (int j : robot_candidates) {
      separate_pair(robot_pos, inv_robot, agents[j].position, inv_agent,
                    robot.radius + agents[j].radius);
    }
  }
  robot.pose.x = robot_pos.x;
  robot.pose.y = robot_pos.y;
}

namespace {

double wrap_coordinate(double value, double extent) {
  if (value >= 0.0 && value < extent) return value;
  double w = std::fmod(value, extent);
  if (w < 0.0) w += extent;
  if (w >= extent) w = 0.0;
  return w;
}

}  // namespace

Vector2 wrap_agent(const Vector2& position, FlowGroup group, const WorldSpec& world) {
  if (flows_along_x(group)) return {wrap_coordinate(position.x, world.length), position.y};
  return {position.x, wrap_coordinate(position.y, world.width)};
}

Vector2 clamp_agent_transverse(const Vector2& position, double radius, FlowGroup group,
                               const WorldSpec& world) {
  if (flows_along_x(group)) return {position.x, std::clamp(position.y, radius, world.width - radius)};
  return {std::clamp(position.x, radius, world.length - radius), position.y};
}

}  // namespace crowdbench
