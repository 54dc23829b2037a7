#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <limits>

#include "crowdbench/metrics.hpp"
#include "crowdbench/record_io.hpp"
#include "crowdbench/simulation.hpp"

using namespace crowdbench;

namespace {

ScenarioSpec empty_scenario() {
  ScenarioSpec spec;
  spec.id = "unit";
  spec.crowd = standard_crowd_configs()[0];
  spec.seed = 99;
  return spec;
}

}  // namespace

TEST(Step, EmptyCrowdBaselineAdvancesOneRampStep) {
  const ScenarioSpec spec = empty_scenario();
  const StepContext ctx = make_step_context(spec);
  SimulationState state = initial_state(spec);
  auto controller = make_controller(ControllerKind::Baseline, NavParams{});
  std::mt19937_64 rng(1);
  const StepRecord r = step(ctx, *controller, state, rng);
  const double v = std::min(spec.robot.limits.v_max, spec.robot.limits.a_max * spec.settings.dt);
  EXPECT_NEAR(r.robot.x - spec.robot.start.x, v * spec.settings.dt, 1e-12);
  EXPECT_DOUBLE_EQ(r.robot.y, spec.robot.start.y);
  EXPECT_DOUBLE_EQ(r.t, spec.settings.dt);
}

TEST(Step, OverlappingAgentIsContactOnset) {
  ScenarioSpec spec = empty_scenario();
  AgentState a;
  a.id = 3;
  a.position = spec.robot.start.position() + Vector2{0.3, 0.0};
  a.goal_direction = {1.0, 0.0};
  spec.agents.push_back(a);
  const RunOutcome out = run_scenario(spec, {ControllerKind::Baseline, {}});
  ASSERT_GE(out.records.size(), 2u);
  EXPECT_TRUE(out.records[0].contacts.empty());
  const auto& first = out.records[1].contacts;
  ASSERT_FALSE(first.empty());
  EXPECT_EQ(first[0].agent_id, 3);
  EXPECT_TRUE(first[0].onset);
}

TEST(Step, NonFiniteStateAborts) {
  ScenarioSpec spec = empty_scenario();
  AgentState a;
  a.position = {20.0, 5.0};
  a.velocity = {std::numeric_limits<double>::quiet_NaN(), 0.0};
  spec.agents.push_back(a);
  EXPECT_THROW(run_scenario(spec, {ControllerKind::Baseline, {}}), SimulationDiverged);
}

TEST(RunScenario, SoloBaselineReachesGoalStraight) {
  const RunOutcome out = run_scenario(empty_scenario(), {ControllerKind::Baseline, {}});
  EXPECT_EQ(out.status, RunStatus::GoalReached);
  const auto stats = path_stats(robot_trajectory(out.records));
  EXPECT_NEAR(stats.length, 40.0, 0.05);
  const double expected = 40.0 + 1.0 / (2.0 * 5.0);
  EXPECT_NEAR(stats.duration, expected, 2 * 0.05);
}

TEST(RunScenario, IdenticalSpecsGiveIdenticalStreams) {
  ScenarioSpec spec = make_scenario(FlowKind::TwoDBoth, kDensityLevels[1],
                                    standard_crowd_configs()[3], 17);
  spec.goal.time_limit = 4.0;
  spec.settings.record_lidar = true;
  const RunOutcome a = run_scenario(spec, {ControllerKind::Dwa, {}});
  const RunOutcome b = run_scenario(spec, {ControllerKind::Dwa, {}});
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    ASSERT_EQ(record_to_json_line(a.records[i]), record_to_json_line(b.records[i])) << "step " << i;
  }
}

TEST(RunScenario, AgentsStayInsideCorridor) {
  ScenarioSpec spec = make_scenario(FlowKind::TwoD, kDensityLevels[2], standard_crowd_configs()[0], 5);
  spec.goal.time_limit = 5.0;
  const RunOutcome out = run_scenario(spec, {ControllerKind::Rvo, {}});
  for (const auto& r : out.records) {
    for (const auto& a : r.agents) {
      ASSERT_TRUE(spec.world.contains({a.x, a.y})) << a.id << " at t=" << r.t;
    }
    ASSERT_TRUE(spec.world.contains({r.robot.x, r.robot.y}));
  }
}

TEST(RecordIo, SerializedMetricsMatchInProcess) {
  ScenarioSpec spec = make_scenario(FlowKind::OneDMinus, kDensityLevels[3],
                                    standard_crowd_configs()[2], 8);
  spec.goal.time_limit = 6.0;
  const RunOutcome out = run_scenario(spec, {ControllerKind::Baseline, {}});
  const auto path = std::filesystem::temp_directory_path() / "crowdbench_record_io_test.jsonl";
  write_records(path, out.records);
  const auto back = read_records(path);
  std::filesystem::remove(path);
  ASSERT_EQ(back.size(), out.records.size());

  const auto s1 = path_stats(robot_trajectory(out.records));
  const auto s2 = path_stats(robot_trajectory(back));
  EXPECT_NEAR(s1.length, s2.length, 1e-12);
  EXPECT_NEAR(s1.jerkiness, s2.jerkiness, 1e-12);
  EXPECT_NEAR(proximity(out.records), proximity(back), 1e-12);
  EXPECT_NEAR(colliding_score(out.records), colliding_score(back), 1e-12);
  const auto f1 = flow_effect(out.records);
  const auto f2 = flow_effect(back);
  EXPECT_NEAR(f1.nbr_vel, f2.nbr_vel, 1e-12);
  EXPECT_NEAR(f1.nbr_reac, f2.nbr_reac, 1e-12);
  const auto e1 = collision_events(out.records, {});
  const auto e2 = collision_events(back, {});
  ASSERT_EQ(e1.size(), e2.size());
  for (std::size_t i = 0; i < e1.size(); ++i) EXPECT_NEAR(e1[i].energy, e2[i].energy, 1e-12);
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(record_to_json_line(back[i]), record_to_json_line(out.records[i]));
  }
}
