#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>

#include "crowdbench/crowd_models.hpp"

using namespace crowdbench;

namespace {

AgentState agent_at(Vector2 p, Vector2 goal_dir, int id = 0) {
  AgentState a;
  a.id = id;
  a.position = p;
  a.goal_direction = goal_dir;
  a.velocity = goal_dir * a.preferred_speed;
  return a;
}

// Smallest root of |p + t v| = r by bisection on the squared distance,
// used to confirm the closed-form root by substitution.
double ttc_bisect(Vector2 p, Vector2 v, double r) {
  double lo = 0.0;
  // t* minimizing distance
  double hi = -dot(p, v) / abs_sq(v);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (abs_sq(p + v * mid) > r * r) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

// ---------------------------------------------------------------------------
// Time to collision

TEST(TtcCircle, HeadOn) {
  const auto t = ttc_circle({2.0, 0.0}, {-1.0, 0.0}, 1.0);
  ASSERT_TRUE(t);
  EXPECT_DOUBLE_EQ(*t, 1.0);
  EXPECT_NEAR(norm(Vector2{2.0, 0.0} + Vector2{-1.0, 0.0} * *t), 1.0, 1e-12);
}

TEST(TtcCircle, RecedingIsNone) { EXPECT_FALSE(ttc_circle({2.0, 0.0}, {1.0, 0.0}, 1.0)); }

TEST(TtcCircle, AlreadyOverlappingIsZero) {
  EXPECT_DOUBLE_EQ(*ttc_circle({0.5, 0.0}, {1.0, 0.0}, 1.0), 0.0);
}

TEST(TtcCircle, RandomRootsVerifiedBySubstitution) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  int hits = 0;
  for (int i = 0; i < 2000; ++i) {
    const Vector2 p{u(rng), u(rng)};
    const Vector2 v{u(rng), u(rng)};
    const double r = 0.6;
    const auto t = ttc_circle(p, v, r);
    if (abs_sq(p) <= r * r) {
      EXPECT_EQ(t, 0.0);
      continue;
    }
    // Oracle: does the closest approach fall inside the disc at t >= 0?
    const double t_star = -dot(p, v) / abs_sq(v);
    const bool collides = t_star > 0.0 && abs_sq(p + v * t_star) < r * r;
    if (!collides) {
      if (t) EXPECT_NEAR(norm(p + v * *t), r, 1e-9);
      continue;
    }
    ASSERT_TRUE(t);
    ++hits;
    EXPECT_NEAR(norm(p + v * *t), r, 1e-9);
    EXPECT_NEAR(*t, ttc_bisect(p, v, r), 1e-9);
  }
  EXPECT_GT(hits, 100);
}

// ---------------------------------------------------------------------------
// Social forces

TEST(SocialForces, EquilibriumAtPreferredVelocity) {
  const AgentState a = agent_at({10.0, 5.0}, {1.0, 0.0});
  const Vector2 acc = social_forces_accel(a, {}, WorldSpec{}, SocialForceParams{});
  EXPECT_NEAR(acc.x, 0.0, 1e-12);
  EXPECT_NEAR(acc.y, 0.0, 1e-9);
}

TEST(SocialForces, RelaxationFromRest) {
  AgentState a = agent_at({10.0, 5.0}, {1.0, 0.0});
  a.velocity = {0.0, 0.0};
  const Vector2 acc = social_forces_accel(a, {}, WorldSpec{}, SocialForceParams{});
  EXPECT_NEAR(norm(acc), 2.8, 1e-9);
  EXPECT_GT(acc.x, 0.0);
}

TEST(SocialForces, HeadOnRepulsionIsSymmetric) {
  const AgentState a = agent_at({10.0, 5.0}, {1.0, 0.0}, 0);
  const AgentState b = agent_at({11.0, 5.0}, {-1.0, 0.0}, 1);
  const SocialForceParams params;
  const Neighbor nb{b.id, b.position, b.velocity, b.radius};
  const Neighbor na{a.id, a.position, a.velocity, a.radius};
  const Vector2 fa = social_forces_accel(a, std::span(&nb, 1), WorldSpec{}, params) -
                     social_forces_accel(a, {}, WorldSpec{}, params);
  const Vector2 fb = social_forces_accel(b, std::span(&na, 1), WorldSpec{}, params) -
                     social_forces_accel(b, {}, WorldSpec{}, params);
  EXPECT_NEAR(fa.x, -fb.x, 1e-12);
  EXPECT_NEAR(fa.y, -fb.y, 1e-12);
  EXPECT_LT(fa.x, 0.0);
}

TEST(SocialForces, CoincidentNeighborPushesAlongX) {
  const AgentState a = agent_at({10.0, 5.0}, {1.0, 0.0});
  const Neighbor same{1, a.position, a.velocity, a.radius};
  const Vector2 acc = social_forces_accel(a, std::span(&same, 1), WorldSpec{}, SocialForceParams{});
  EXPECT_GT(acc.x, 0.0);
  EXPECT_NEAR(acc.y, 0.0, 1e-9);
}

// ---------------------------------------------------------------------------
// Sampled RVO

TEST(RvoSampled, NoNeighborsKeepsPreferred) {
  const AgentState a = agent_at({10.0, 5.0}, {0.0, 1.0});
  const auto c = rvo_sampled_velocity(a, {}, 1.5, RvoSamplingParams{});
  EXPECT_EQ(c.velocity, a.preferred_velocity());
  EXPECT_DOUBLE_EQ(c.cost, 0.0);
}

TEST(RvoSampled, MatchesExhaustiveScan) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::uniform_real_distribution<double> uv(-1.5, 1.5);
  const RvoSamplingParams params;
  for (int trial = 0; trial < 300; ++trial) {
    AgentState a = agent_at({10.0, 5.0}, normalized(Vector2{u(rng), u(rng)}));
    a.velocity = {uv(rng), uv(rng)};
    std::vector<Neighbor> nbrs;
    const int n = trial % 8;
    for (int k = 0; k < n; ++k) {
      nbrs.push_back({k + 1, a.position + Vector2{u(rng), u(rng)}, {uv(rng), uv(rng)}, 0.3});
    }
    const double horizon = trial % 2 ? 1.5 : 0.5;
    // Oracle: score every candidate and keep the first minimum.
    double best = std::numeric_limits<double>::infinity();
    Vector2 best_v;
    for (const auto& c : rvo_candidates(a, params)) {
      const double cost = rvo_candidate_cost(c, a, nbrs, horizon, params);
      if (cost < best) {
        best = cost;
        best_v = c;
      }
    }
    const auto got = rvo_sampled_velocity(a, nbrs, horizon, params);
    ASSERT_EQ(got.velocity, best_v) << "trial " << trial;
    ASSERT_EQ(got.cost, best);
  }
}

TEST(RvoSampled, CandidateSetStartsWithPreferredAndZero) {
  const AgentState a = agent_at({1.0, 1.0}, {1.0, 0.0});
  const RvoSamplingParams params;
  const auto c = rvo_candidates(a, params);
  ASSERT_EQ(c.size(), 2u + params.directions * params.speeds);
  EXPECT_EQ(c[0], a.preferred_velocity());
  EXPECT_EQ(c[1], (Vector2{0.0, 0.0}));
}

TEST(RvoSampled, HeadOnPassKeepsSeparation) {
  const RvoSamplingParams params;
  AgentState a = agent_at({20.0, 5.0}, {1.0, 0.0}, 0);
  AgentState b = agent_at({26.0, 5.05}, {-1.0, 0.0}, 1);
  const double dt = 0.05;
  double min_d = norm(a.position - b.position);
  bool deviated = false;
  for (int s = 0; s < 200; ++s) {
    const Neighbor na{a.id, a.position, a.velocity, a.radius};
    const Neighbor nb{b.id, b.position, b.velocity, b.radius};
    const Vector2 va = rvo_sampled_velocity(a, std::span(&nb, 1), 1.5, params).velocity;
    const Vector2 vb = rvo_sampled_velocity(b, std::span(&na, 1), 1.5, params).velocity;
    deviated = deviated || std::abs(va.y) > 1e-9;
    a.velocity = va;
    b.velocity = vb;
    a.position += va * dt;
    b.position += vb * dt;
    min_d = std::min(min_d, norm(a.position - b.position));
  }
  EXPECT_TRUE(deviated);
  EXPECT_GE(min_d, a.radius + b.radius);
  EXPECT_GT(a.position.x, b.position.x);
}

// ---------------------------------------------------------------------------
// Per-step update

namespace {

CrowdModelConfig config_for(CrowdAlgorithm algorithm, bool reactive) {
  CrowdModelConfig c;
  c.algorithm = algorithm;
  c.reactive_to_robot = reactive;
  return c;
}

Vector2 decide(const std::vector<AgentState>& agents, const std::optional<Neighbor>& robot,
               const CrowdModelConfig& config, double dt) {
  NeighborGrid grid(WorldSpec{}, 2.5);
  build_crowd_grid(grid, agents, robot);
  const CrowdView view{agents, robot, &grid, WorldSpec{}};
  return update_agent_velocity(view, 0, config, dt);
}

const std::vector<CrowdAlgorithm> kAlgorithms{CrowdAlgorithm::SocialForces,
                                              CrowdAlgorithm::RvoSampled, CrowdAlgorithm::Orca};

}  // namespace

TEST(UpdateAgentVelocity, NonReactiveIgnoresRobot) {
  const std::vector<AgentState> agents{agent_at({10.0, 5.0}, {1.0, 0.0}),
                                       agent_at({12.0, 6.0}, {-1.0, 0.0}, 1)};
  const Neighbor robot{kRobotId, {10.8, 5.0}, {-1.0, 0.0}, 0.18};
  for (const auto algorithm : kAlgorithms) {
    const auto config = config_for(algorithm, false);
    EXPECT_EQ(decide(agents, robot, config, 0.05), decide(agents, std::nullopt, config, 0.05))
        << to_string(algorithm);
  }
}

TEST(UpdateAgentVelocity, ReactiveAvoidsRobot) {
  const std::vector<AgentState> agents{agent_at({10.0, 5.0}, {1.0, 0.0}),
                                       agent_at({12.0, 8.0}, {-1.0, 0.0}, 1)};
  const Neighbor robot{kRobotId, {10.8, 5.0}, {-1.0, 0.0}, 0.18};
  for (const auto algorithm : kAlgorithms) {
    const auto config = config_for(algorithm, true);
    EXPECT_NE(decide(agents, robot, config, 0.05), decide(agents, std::nullopt, config, 0.05))
        << to_string(algorithm);
  }
}

TEST(UpdateAgentVelocity, SocialForcesZeroDtKeepsVelocity) {
  std::vector<AgentState> agents{agent_at({10.0, 5.0}, {1.0, 0.0}),
                                 agent_at({10.5, 5.0}, {-1.0, 0.0}, 1)};
  agents[0].velocity = {0.3, -0.2};
  const auto config = config_for(CrowdAlgorithm::SocialForces, true);
  EXPECT_EQ(decide(agents, std::nullopt, config, 0.0), agents[0].velocity);
}

TEST(UpdateAgentVelocity, SpeedNeverExceedsCap) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> ux(0.5, 49.5);
  std::uniform_real_distribution<double> uy(0.5, 9.5);
  std::uniform_real_distribution<double> uv(-1.5, 1.5);
  for (const auto algorithm : kAlgorithms) {
    const auto config = config_for(algorithm, true);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<AgentState> agents;
      for (int k = 0; k < 40; ++k) {
        AgentState a = agent_at({ux(rng), uy(rng)}, k % 2 ? Vector2{1, 0} : Vector2{0, -1}, k);
        a.velocity = {uv(rng), uv(rng)};
        agents.push_back(a);
      }
      NeighborGrid grid(WorldSpec{}, 2.5);
      build_crowd_grid(grid, agents, std::nullopt);
      const CrowdView view{agents, std::nullopt, &grid, WorldSpec{}};
      for (int i = 0; i < 40; ++i) {
        const Vector2 v = update_agent_velocity(view, i, config, 0.05);
        ASSERT_TRUE(is_finite(v));
        ASSERT_LE(norm(v), agents[i].preferred_speed * kAgentSpeedCapFactor + 1e-12);
      }
    }
  }
}
