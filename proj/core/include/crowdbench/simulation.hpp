#pragma once

#include <memory>
#include <random>
#include <vector>

#include "crowdbench/contacts.hpp"
#include "crowdbench/crowd_config.hpp"
#include "crowdbench/navigation.hpp"
#include "crowdbench/scenario.hpp"
#include "crowdbench/sensors.hpp"
#include "crowdbench/world.hpp"

namespace crowdbench {

struct SimulationState {
  SimClock clock;
  RobotState robot;
  std::vector<AgentState> agents;  // ascending id
  ContactSet contacts;
};

/// Everything that stays fixed over a run.
struct StepContext {
  WorldSpec world;
  CrowdModelConfig crowd;
  RobotLimits limits;
  GoalSpec goal;
  OverlapParams overlap;
  std::optional<LidarSpec> lidar;
};

StepContext make_step_context(const ScenarioSpec& spec);
SimulationState initial_state(const ScenarioSpec& spec);

/// Snapshot of a state as a record (used for the t = 0 record as well).
StepRecord make_record(const SimulationState& state);

/// Advances one synchronous step:
///   1. sense from the state at t,
///   2. controller command, clamped to the robot limits,
///   3. every agent velocity from the frozen state at t,
///   4. integration (robot wall clamp, agent transverse clamp),
///   5. contact detection, then overlap relaxation,
///   6. wrap along each agent's flow axis,
///   7. record.
/// Throws SimulationDiverged when any quantity becomes non-finite.
StepRecord step(const StepContext& ctx, Controller& controller, SimulationState& state,
                std::mt19937_64& rng);

struct RunOutcome {
  RunStatus status = RunStatus::Running;
  Pose start;
  std::vector<StepRecord> records;  // records[0] is the initial state
};

/// Runs a scenario to goal or timeout.
RunOutcome run_scenario(const ScenarioSpec& spec, const ControllerSpec& controller);

}  // namespace crowdbench
