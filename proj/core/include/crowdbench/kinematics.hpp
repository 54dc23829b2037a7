#pragma once

#include "crowdbench/world.hpp"

namespace crowdbench {

/// Below this |w| (rad/s) the arc is integrated as a straight segment.
inline constexpr double kStraightLineOmega = 1e-6;

/// Exact constant-twist integration of a differential-drive pose over dt.
Pose integrate_diff_drive(const Pose& pose, double v, double w, double dt);

/// Applies speed and acceleration limits to a commanded twist given the
/// twist executed on the previous step.
VelocityCommand clamp_command(const VelocityCommand& previous, const VelocityCommand& commanded,
                              const RobotLimits& limits, double dt);

/// Keeps the robot footprint inside the corridor. Returns true when a wall
/// clamp was applied.
bool clamp_to_walls(Pose& pose, double radius, const WorldSpec& world);

}  // namespace crowdbench
