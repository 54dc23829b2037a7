#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "crowdbench/contacts.hpp"
#include "crowdbench/crowd_config.hpp"
#include "crowdbench/navigation.hpp"
#include "crowdbench/sensors.hpp"
#include "crowdbench/world.hpp"

namespace crowdbench {

enum class FlowKind { OneDPlus, OneDMinus, OneDBoth, TwoD, TwoDBoth };

inline constexpr std::array<FlowKind, 5> kAllFlows{FlowKind::OneDPlus, FlowKind::OneDMinus,
                                                   FlowKind::OneDBoth, FlowKind::TwoD,
                                                   FlowKind::TwoDBoth};

/// Short token used in ids and files: 1Dp, 1Dm, 1Dx, 2D, 2Dx.
const char* to_string(FlowKind flow);
/// Display label: 1D+, 1D-, 1Dx, 2D, 2Dx.
const char* flow_label(FlowKind flow);
FlowKind flow_kind_from_string(const std::string& name);

struct DensityLevel {
  int agents = 0;
  double per_m2 = 0.0;
  bool operator==(const DensityLevel&) const = default;
};

inline constexpr std::array<DensityLevel, 4> kDensityLevels{
    DensityLevel{50, 0.1}, DensityLevel{100, 0.2}, DensityLevel{200, 0.4}, DensityLevel{350, 0.7}};

/// Throws unless `agents` is one of the standard levels.
DensityLevel density_for_agents(int agents);

struct RobotSetup {
  Pose start{1.0, 5.0, 0.0};
  double radius = 0.18;
  double mass = 20.0;
  double top_height = 0.42;
  RobotLimits limits;

  RobotState initial_state() const;
};

struct SimSettings {
  double dt = 0.05;
  OverlapParams overlap;
  bool record_lidar = false;
  LidarSpec lidar;
};

struct ControllerSpec {
  ControllerKind kind = ControllerKind::Baseline;
  NavParams params;
};

struct ScenarioSpec {
  std::string id;
  FlowKind flow = FlowKind::OneDPlus;
  DensityLevel density = kDensityLevels[0];
  CrowdModelConfig crowd;
  std::optional<ControllerSpec> controller;
  std::uint64_t seed = 0;
  WorldSpec world;
  RobotSetup robot;
  SimSettings settings;
  GoalSpec goal;
  std::vector<AgentState> agents;
};

struct SuiteSpec {
  std::uint64_t master_seed = 0;
  std::vector<ScenarioSpec> scenarios;
};

/// The five crowd configurations of the standard suite, in suite order.
std::vector<CrowdModelConfig> standard_crowd_configs();

std::string scenario_id(FlowKind flow, const DensityLevel& density, const CrowdModelConfig& crowd);

/// Deterministic per-cell seed.
std::uint64_t cell_seed(std::uint64_t master_seed, const std::string& id);

/// Goal direction of agent `index` under a flow pattern.
FlowGroup flow_group_for(FlowKind flow, int index);

/// Thrown when rejection sampling cannot place the requested crowd.
class PlacementError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kMaxPlacementRejections = 100000;

std::vector<AgentState> spawn_crowd(FlowKind flow, int count, const WorldSpec& world,
                                    const Pose& robot_start, const CrowdModelConfig& crowd,
                                    std::mt19937_64& rng, double agent_radius = 0.3);

/// Full cell including its fixed placements.
ScenarioSpec make_scenario(FlowKind flow, const DensityLevel& density,
                           const CrowdModelConfig& crowd, std::uint64_t master_seed);

SuiteSpec generate_suite(std::uint64_t master_seed);

/// Same robot, world and goal with no crowd; used for the solo reference run.
ScenarioSpec solo_scenario(const ScenarioSpec& spec);

enum class RunStatus { Running, GoalReached, TimedOut };

const char* to_string(RunStatus status);

RunStatus termination_check(const Pose& robot, const Pose& start, const GoalSpec& goal,
                            double t);

}  // namespace crowdbench
