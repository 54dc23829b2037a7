#pragma once

#include <array>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "crowdbench/world.hpp"

namespace crowdbench {

// ---------------------------------------------------------------------------
// Path efficiency

struct TrajectorySample {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double v = 0.0;
  double w = 0.0;
};

std::vector<TrajectorySample> robot_trajectory(std::span<const StepRecord> records);

struct PathStats {
  double duration = 0.0;    // T, s
  double length = 0.0;      // L, m
  double jerkiness = 0.0;   // J, total variation of v plus lambda * total variation of w
};

/// lambda mixes angular into linear speed variation (m/rad).
PathStats path_stats(std::span<const TrajectorySample> trajectory, double lambda = 1.0);

struct PathEfficiency {
  double time_ratio = 1.0;
  double length_ratio = 1.0;
  double smoothness_ratio = 1.0;
  bool timed_out = false;
};

/// Solo over crowd ratios. A timed-out crowd run uses `time_limit` as its
/// duration and is flagged.
PathEfficiency path_efficiency(const PathStats& solo, const PathStats& crowd, bool crowd_timed_out,
                               double time_limit);

/// Radar-chart value: raw metric clamped to [0, 1.5].
double chart_value(double raw);

// ---------------------------------------------------------------------------
// Effect on the crowd flow

struct FlowEffect {
  double nbr_vel = 1.0;
  double nbr_reac = 1.0;
  bool no_neighbors = false;
};

FlowEffect flow_effect(std::span<const StepRecord> records, double neighbor_range = 1.0);

// ---------------------------------------------------------------------------
// Proximity and colliding

/// Closest robot-agent center distance in one record, clamped to [0, range].
double closest_agent_distance(const StepRecord& record, double range);

double proximity_from_distances(std::span<const double> d_min, double range);
double proximity(std::span<const StepRecord> records, double range = 5.0);

/// Time with at least one robot-agent contact, summing each step's dt.
double collision_time(std::span<const StepRecord> records);

double colliding_score(double collision_time, double scenario_time);
double colliding_score(std::span<const StepRecord> records);

// ---------------------------------------------------------------------------
// Collision assessment

enum class BodySegment { Feet, LowerLegs, UpperLegs, UpperBody };

const char* to_string(BodySegment segment);
BodySegment body_segment_from_string(const std::string& name);

struct ReflectedMassTable {
  double feet = 4.0;
  double lower_legs = 13.0;
  double upper_legs = 24.0;
  double upper_body = 40.0;
};

double reflected_mass(BodySegment segment, const ReflectedMassTable& table = {});

double reduced_mass(double m_a, double m_b);

/// Kinetic energy a two-body impact absorbs: mu * v_rel^2 / 2.
double impact_energy(double m_ref, double m_robot, double v_rel);

/// Upper edges of feet, lower legs and upper legs (m, ascending).
using SegmentBoundaries = std::array<double, 3>;
inline constexpr SegmentBoundaries kDefaultSegmentBoundaries{0.15, 0.55, 0.95};

/// Segment with the largest vertical overlap with the robot band
/// [0, top_height]; ties go to the lower segment.
BodySegment segment_for_contact(double top_height,
                                const SegmentBoundaries& boundaries = kDefaultSegmentBoundaries);

struct CollisionModel {
  double robot_mass = 20.0;
  double robot_top_height = 0.42;
  ReflectedMassTable masses;
  SegmentBoundaries boundaries = kDefaultSegmentBoundaries;
};

struct CollisionEvent {
  double t = 0.0;
  int agent_id = 0;
  BodySegment segment = BodySegment::Feet;
  double m_ref = 0.0;
  double v_rel = 0.0;
  double energy = 0.0;
};

/// One event per contact onset.
std::vector<CollisionEvent> collision_events(std::span<const StepRecord> records,
                                             const CollisionModel& model);

inline constexpr double kEnergyBinWidth = 0.5;  // J
inline constexpr int kEnergyOpenBin = 20;       // [10 J, inf)

/// Bin index -> count; the last bin is open-ended.
using EnergyHistogram = std::map<int, int>;

int energy_bin(double energy);
double energy_bin_low(int bin);
double energy_bin_high(int bin);  // +inf for the open bin

struct CollisionRates {
  int n_collisions = 0;
  double total_time = 0.0;
  double energy_sum = 0.0;
  double f_c = 0.0;  // 1/s
  double q = 0.0;    // J/s
  EnergyHistogram histogram;
};

CollisionRates collision_rates(std::span<const CollisionEvent> events, double total_time);

}  // namespace crowdbench
