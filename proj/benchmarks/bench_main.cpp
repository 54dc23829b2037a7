#include <benchmark/benchmark.h>

#include <random>

#include "crowdbench/crowd_models.hpp"
#include "crowdbench/navigation.hpp"
#include "crowdbench/neighbor_grid.hpp"
#include "crowdbench/scenario.hpp"
#include "crowdbench/simulation.hpp"

using namespace crowdbench;

namespace {

// Standard crowd configurations by suite index.
ScenarioSpec dense_cell(int crowd_index) {
  return make_scenario(FlowKind::OneDBoth, kDensityLevels[3], standard_crowd_configs()[crowd_index], 42);
}

void BM_FullStep(benchmark::State& state) {
  const ScenarioSpec spec = dense_cell(static_cast<int>(state.range(0)));
  const StepContext ctx = make_step_context(spec);
  const auto kind = static_cast<ControllerKind>(state.range(1));
  auto controller = make_controller(kind, NavParams{});
  SimulationState sim = initial_state(spec);
  std::mt19937_64 rng(spec.seed);
  for (auto _ : state) benchmark::DoNotOptimize(step(ctx, *controller, sim, rng));
  state.SetLabel(spec.crowd.label + "/" + to_string(kind));
}
BENCHMARK(BM_FullStep)->ArgsProduct({{0, 1, 2, 3, 4}, {0, 1, 2}})->Unit(benchmark::kMillisecond);

void BM_CrowdVelocityUpdate(benchmark::State& state) {
  const ScenarioSpec spec = dense_cell(static_cast<int>(state.range(0)));
  NeighborGrid grid(spec.world, spec.crowd.interaction_range / 2.0);
  build_crowd_grid(grid, spec.agents, std::nullopt);
  const CrowdView view{spec.agents, std::nullopt, &grid, spec.world};
  for (auto _ : state) {
    for (int i = 0; i < static_cast<int>(spec.agents.size()); ++i) {
      benchmark::DoNotOptimize(update_agent_velocity(view, i, spec.crowd, spec.settings.dt));
    }
  }
  state.SetLabel(spec.crowd.label);
}
BENCHMARK(BM_CrowdVelocityUpdate)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

void BM_GridBuildAndQuery(benchmark::State& state) {
  const WorldSpec world;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ux(0.0, world.length), uy(0.0, world.width);
  std::vector<Vector2> pts(static_cast<std::size_t>(state.range(0)));
  for (auto& p : pts) p = {ux(rng), uy(rng)};
  NeighborGrid grid(world, 2.5);
  for (auto _ : state) {
    grid.build(pts);
    std::size_t hits = 0;
    for (const auto& p : pts) hits += grid.query(p, 5.0).size();
    benchmark::DoNotOptimize(hits);
  }
}
BENCHMARK(BM_GridBuildAndQuery)->Arg(50)->Arg(200)->Arg(350);

void BM_DwaCommand(benchmark::State& state) {
  const ScenarioSpec spec = dense_cell(0);
  RobotState robot = spec.robot.initial_state();
  robot.pose = {25.0, 5.0, 0.0};
  robot.v = 0.8;
  const DwaParams params;
  const auto obstacles = dwa_obstacles(robot, spec.agents, spec.world, params);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dwa_command(robot, obstacles, spec.goal, spec.robot.limits, params, 0.05));
  }
  state.counters["obstacles"] = static_cast<double>(obstacles.size());
}
BENCHMARK(BM_DwaCommand);

}  // namespace
BENCHMARK_MAIN();
