#pragma once

#include <string>

namespace crowdbench {

enum class CrowdAlgorithm { SocialForces, RvoSampled, Orca };

const char* to_string(CrowdAlgorithm algorithm);
CrowdAlgorithm crowd_algorithm_from_string(const std::string& name);

/// Helbing-style parameters: relaxation time, repulsion strength and range.
struct SocialForceParams {
  double tau_relax = 0.5;
  double strength = 2.0;
  double range = 0.35;
  double wall_range = 0.2;
};

struct RvoSamplingParams {
  int directions = 12;
  int speeds = 6;
  double speed_factor = 1.1;      // largest sampled speed / preferred speed
  double collision_weight = 1.0;  // s * m/s
  double min_ttc = 0.05;          // s
};

struct CrowdModelConfig {
  std::string label;
  CrowdAlgorithm algorithm = CrowdAlgorithm::RvoSampled;
  double horizon = 1.5;
  bool reactive_to_robot = true;
  double preferred_speed = 1.4;
  double max_accel = 5.0;
  double interaction_range = 5.0;
  int max_neighbors = 10;
  SocialForceParams social_forces;
  RvoSamplingParams rvo;
};

}  // namespace crowdbench
