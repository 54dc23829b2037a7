#include "crowdbench/scenario.hpp"

#include <cstdio>
#include <stdexcept>

namespace crowdbench {

const char* to_string(FlowKind flow) {
  switch (flow) {
    case FlowKind::OneDPlus: return "1Dp";
    case FlowKind::OneDMinus: return "1Dm";
    case FlowKind::OneDBoth: return "1Dx";
    case FlowKind::TwoD: return "2D";
    case FlowKind::TwoDBoth: return "2Dx";
  }
  return "1Dp";
}

const char* flow_label(FlowKind flow) {
  switch (flow) {
    case FlowKind::OneDPlus: return "1D+";
    case FlowKind::OneDMinus: return "1D-";
    case FlowKind::OneDBoth: return "1Dx";
    case FlowKind::TwoD: return "2D";
    case FlowKind::TwoDBoth: return "2Dx";
  }
  return "1D+";
}

FlowKind flow_kind_from_string(const std::string& name) {
  for (const auto flow : kAllFlows) {
    if (name == to_string(flow) || name == flow_label(flow)) return flow;
  }
  throw std::invalid_argument("unknown flow '" + name + "'");
}

DensityLevel density_for_agents(int agents) {
  for (const auto& level : kDensityLevels) {
    if (level.agents == agents) return level;
  }
  throw std::invalid_argument("unsupported density: " + std::to_string(agents) + " agents");
}

RobotState RobotSetup::initial_state() const {
  RobotState r;
  r.pose = start;
  r.radius = radius;
  r.mass = mass;
  r.top_height = top_height;
  return r;
}

std::vector<CrowdModelConfig> standard_crowd_configs() {
  const auto make = [](std::string label, CrowdAlgorithm algorithm, double horizon, bool reactive) {
    CrowdModelConfig c;
    c.label = std::move(label);
    c.algorithm = algorithm;
    c.horizon = horizon;
    c.reactive_to_robot = reactive;
    return c;
  };
  return {
      make("sf-r", CrowdAlgorithm::SocialForces, 1.5, true),
      make("sf-n", CrowdAlgorithm::SocialForces, 1.5, false),
      make("rvo05-r", CrowdAlgorithm::RvoSampled, 0.5, true),
      make("rvo15-r", CrowdAlgorithm::RvoSampled, 1.5, true),
      make("rvo15-n", CrowdAlgorithm::RvoSampled, 1.5, false),
  };
}

std::string scenario_id(FlowKind flow, const DensityLevel& density, const CrowdModelConfig& crowd) {
  char count[8];
  std::snprintf(count, sizeof(count), "%03d", density.agents);
  return std::string(to_string(flow)) + "-" + count + "-" + crowd.label;
}

std::uint64_t cell_seed(std::uint64_t master_seed, const std::string& id) {
  // FNV-1a over the id, mixed with the master seed through splitmix64.
  std::uint64_t h = 1469598103934665603ULL;
  for (const unsigned char ch : id) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  std::uint64_t z = master_seed ^ h;
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

FlowGroup flow_group_for(FlowKind flow, int index) {
  const bool even = index % 2 == 0;
  switch (flow) {
    case FlowKind::OneDPlus: return FlowGroup::PlusX;
    case FlowKind::OneDMinus: return FlowGroup::MinusX;
    case FlowKind::OneDBoth: return even ? FlowGroup::PlusX : FlowGroup::MinusX;
    case FlowKind::TwoD: return FlowGroup::PlusY;
    case FlowKind::TwoDBoth: return even ? FlowGroup::PlusY : FlowGroup::MinusY;
  }
  return FlowGroup::PlusX;
}

std::vector<AgentState> spawn_crowd(FlowKind flow, int count, const WorldSpec& world,
                                    const Pose& robot_start, const CrowdModelConfig& crowd,
                                    std::mt19937_64& rng, double agent_radius) {
  constexpr double kRobotClearance = 1.0;
  std::uniform_real_distribution<double> ux(agent_radius, world.length - agent_radius);
  std::uniform_real_distribution<double> uy(agent_radius, world.width - agent_radius);
  const double min_sq = 4.0 * agent_radius * agent_radius;

  std::vector<AgentState> agents;
  agents.reserve(count);
  int rejections = 0;
  while (static_cast<int>(agents.size()) < count) {
    const Vector2 p{ux(rng), uy(rng)};
    bool ok = abs_sq(p - robot_start.position()) >= kRobotClearance * kRobotClearance;
    for (std::size_t k = 0; ok && k < agents.size(); ++k) {
      ok = abs_sq(agents[k].position - p) >= min_sq;
    }
    if (!ok) {
      if (++rejections >= kMaxPlacementRejections) {
        throw PlacementError("cannot place " + std::to_string(count) + " agents after " +
                             std::to_string(kMaxPlacementRejections) + " rejections");
      }
      continue;
    }
    AgentState a;
    a.id = static_cast<int>(agents.size());
    a.position = p;
    a.radius = agent_radius;
    a.preferred_speed = crowd.preferred_speed;
    a.flow_group = flow_group_for(flow, a.id);
    a.goal_direction = flow_direction(a.flow_group);
    a.velocity = a.preferred_velocity();
    agents.push_back(a);
  }
  return agents;
}

ScenarioSpec make_scenario(FlowKind flow, const DensityLevel& density,
                           const CrowdModelConfig& crowd, std::uint64_t master_seed) {
  ScenarioSpec s;
  s.flow = flow;
  s.density = density;
  s.crowd = crowd;
  s.id = scenario_id(flow, density, crowd);
  s.seed = cell_seed(master_seed, s.id);
  std::mt19937_64 rng(s.seed);
  s.agents = spawn_crowd(flow, density.agents, s.world, s.robot.start, crowd, rng);
  return s;
}

SuiteSpec generate_suite(std::uint64_t master_seed) {
  SuiteSpec suite;
  suite.master_seed = master_seed;
  for (const auto& crowd : standard_crowd_configs()) {
    for (const auto& density : kDensityLevels) {
      for (const auto flow : kAllFlows) {
        suite.scenarios.push_back(make_scenario(flow, density, crowd, master_seed));
      }
    }
  }
  return suite;
}

ScenarioSpec solo_scenario(const ScenarioSpec& spec) {
  ScenarioSpec solo = spec;
  solo.id = "solo";
  solo.agents.clear();
  return solo;
}

const char* to_string(RunStatus status) {
  switch (status) {
    case RunStatus::Running: return "running";
    case RunStatus::GoalReached: return "goal_reached";
    case RunStatus::TimedOut: return "timed_out";
  }
  return "running";
}

RunStatus termination_check(const Pose& robot, const Pose& start, const GoalSpec& goal, double t) {
  const double progress = dot(robot.position() - start.position(), normalized(goal.axis));
  if (progress >= goal.target_progress) return RunStatus::GoalReached;
  if (t >= goal.time_limit) return RunStatus::TimedOut;
  return RunStatus::Running;
}

}  // namespace crowdbench
