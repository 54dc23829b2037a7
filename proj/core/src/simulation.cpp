#include "crowdbench/simulation.hpp"

#include <cmath>
#include <string>

#include "crowdbench/crowd_models.hpp"
#include "crowdbench/kinematics.hpp"

namespace crowdbench {

StepContext make_step_context(const ScenarioSpec& spec) {
  StepContext ctx;
  ctx.world = spec.world;
  ctx.crowd = spec.crowd;
  ctx.limits = spec.robot.limits;
  ctx.goal = spec.goal;
  ctx.overlap = spec.settings.overlap;
  if (spec.settings.record_lidar) ctx.lidar = spec.settings.lidar;
  return ctx;
}

SimulationState initial_state(const ScenarioSpec& spec) {
  SimulationState state;
  state.clock.dt = spec.settings.dt;
  state.robot = spec.robot.initial_state();
  state.agents = spec.agents;
  return state;
}

StepRecord make_record(const SimulationState& state) {
  StepRecord r;
  r.t = state.clock.t();
  r.robot = {state.robot.pose.x, state.robot.pose.y, state.robot.pose.theta, state.robot.v,
             state.robot.w};
  r.agents.reserve(state.agents.size());
  for (const auto& a : state.agents) {
    r.agents.push_back({a.id, a.position.x, a.position.y, a.velocity.x, a.velocity.y});
  }
  r.contacts = state.contacts;
  return r;
}

namespace {

void check_finite(const SimulationState& state) {
  const auto& p = state.robot.pose;
  if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.theta) ||
      !std::isfinite(state.robot.v) || !std::isfinite(state.robot.w)) {
    throw SimulationDiverged("robot state became non-finite at step " +
                             std::to_string(state.clock.step_index));
  }
  for (const auto& a : state.agents) {
    if (!is_finite(a.position) || !is_finite(a.velocity)) {
      throw SimulationDiverged("agent " + std::to_string(a.id) +
                               " state became non-finite at step " +
                               std::to_string(state.clock.step_index));
    }
  }
}

}  // namespace

StepRecord step(const StepContext& ctx, Controller& controller, SimulationState& state,
                std::mt19937_64& rng) {
  const double dt = state.clock.dt;

  // (1) views of the state at t
  const std::optional<Neighbor> robot_disc =
      Neighbor{kRobotId, state.robot.position(), state.robot.world_velocity(), state.robot.radius};
  NeighborGrid grid(ctx.world, ctx.crowd.interaction_range / 2.0);
  build_crowd_grid(grid, state.agents, robot_disc);
  const CrowdView crowd_view{state.agents, robot_disc, &grid, ctx.world};
  const NavView nav_view{state.robot, state.agents, ctx.world, ctx.goal, ctx.limits, dt};

  // (2) robot command
  const VelocityCommand previous{state.robot.v, state.robot.w};
  const VelocityCommand command =
      clamp_command(previous, controller.command(nav_view), ctx.limits, dt);

  // (3) synchronous crowd decisions
  std::vector<Vector2> next_velocity(state.agents.size());
  for (std::size_t i = 0; i < state.agents.size(); ++i) {
    next_velocity[i] = update_agent_velocity(crowd_view, static_cast<int>(i), ctx.crowd, dt);
  }

  // (4) integration
  state.robot.v = command.v;
  state.robot.w = command.w;
  state.robot.pose = integrate_diff_drive(state.robot.pose, command.v, command.w, dt);
  clamp_to_walls(state.robot.pose, state.robot.radius, ctx.world);
  for (std::size_t i = 0; i < state.agents.size(); ++i) {
    auto& a = state.agents[i];
    a.velocity = next_velocity[i];
    a.position = clamp_agent_transverse(a.position + a.velocity * dt, a.radius, a.flow_group, ctx.world);
  }

  // (5) contacts, then overlap relaxation
  state.contacts = detect_robot_contacts(state.robot, state.agents, state.contacts);
  resolve_overlaps(state.agents, state.robot, ctx.world, ctx.overlap);
  clamp_to_walls(state.robot.pose, state.robot.radius, ctx.world);

  // (6) wrap
  for (auto& a : state.agents) {
    a.position = clamp_agent_transverse(a.position, a.radius, a.flow_group, ctx.world);
    a.position = wrap_agent(a.position, a.flow_group, ctx.world);
  }

  ++state.clock.step_index;
  check_finite(state);

  // (7) record
  StepRecord record = make_record(state);
  if (ctx.lidar) record.lidar = lidar_scan(state.robot.pose, state.agents, ctx.world, *ctx.lidar, rng);
  return record;
}

RunOutcome run_scenario(const ScenarioSpec& spec, const ControllerSpec& controller_spec) {
  const StepContext ctx = make_step_context(spec);
  SimulationState state = initial_state(spec);
  auto controller = make_controller(controller_spec.kind, controller_spec.params);
  std::mt19937_64 rng(spec.seed);

  RunOutcome out;
  out.start = spec.robot.start;
  const auto expected_steps =
      static_cast<std::size_t>(std::ceil(spec.goal.time_limit / spec.settings.dt)) + 1;
  out.records.reserve(expected_steps);
  out.records.push_back(make_record(state));
  if (ctx.lidar) {
    out.records.back().lidar = lidar_scan(state.robot.pose, state.agents, ctx.world, *ctx.lidar, rng);
  }

  for (;;) {
    out.records.push_back(step(ctx, *controller, state, rng));
    out.status = termination_check(state.robot.pose, out.start, spec.goal, state.clock.t());
    if (out.status != RunStatus::Running) break;
  }
  return out;
}

}  // namespace crowdbench
