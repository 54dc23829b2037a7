#pragma once

#include <random>
#include <span>

#include "crowdbench/world.hpp"

namespace crowdbench {

struct LidarSpec {
  int beams = 360;
  double angular_span = 2.0 * M_PI;
  double max_range = 20.0;
  double range_noise = 0.01;
  double dropout = 0.0;
  double mount_x = 0.0;    // forward offset from robot center, m
  double mount_yaw = 0.0;  // rad
};

/// Beam angle relative to the sensor frame; beam 0 points forward. A full
/// circle spreads the beams without repeating the first one.
double lidar_beam_angle(const LidarSpec& spec, int beam);

/// Distance along a unit-direction ray to a disc, or a negative value when
/// missed. Zero when the origin is inside the disc.
double ray_circle(const Vector2& origin, const Vector2& direction, const Vector2& center,
                  double radius);

/// Distance along a unit-direction ray to a segment, or negative when missed.
double ray_segment(const Vector2& origin, const Vector2& direction, const Segment& segment);

LidarScan lidar_scan(const Pose& pose, std::span<const AgentState> agents, const WorldSpec& world,
                     const LidarSpec& spec, std::mt19937_64& rng);

struct PoseDelta {
  double dx = 0.0;
  double dy = 0.0;
  double dtheta = 0.0;
};

struct OdometryNoise {
  double sigma_xy = 0.0;
  double sigma_theta = 0.0;
};

PoseDelta odometry(const PoseDelta& true_delta, const OdometryNoise& noise, std::mt19937_64& rng);

}  // namespace crowdbench
