#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "crowdbench/metrics.hpp"

namespace crowdbench {

const char* to_string(BodySegment segment) {
  switch (segment) {
    case BodySegment::Feet: return "feet";
    case BodySegment::LowerLegs: return "lower_legs";
    case BodySegment::UpperLegs: return "upper_legs";
    case BodySegment::UpperBody: return "upper_body";
  }
  return "feet";
}

BodySegment body_segment_from_string(const std::string& name) {
  for (const auto s : {BodySegment::Feet, BodySegment::LowerLegs, BodySegment::UpperLegs,
                       BodySegment::UpperBody}) {
    if (name == to_string(s)) return s;
  }
  throw std::invalid_argument("unknown body segment '" + name + "'");
}

double reflected_mass(BodySegment segment, const ReflectedMassTable& table) {
  switch (segment) {
    case BodySegment::Feet: return table.feet;
    case BodySegment::LowerLegs: return table.lower_legs;
    case BodySegment::UpperLegs: return table.upper_legs;
    case BodySegment::UpperBody: return table.upper_body;
  }
  return table.feet;
}

double reduced_mass(double m_a, double m_b) { return 1.0 / (1.0 / m_a + 1.0 / m_b); }

double impact_energy(double m_ref, double m_robot, double v_rel) {
  return 0.5 * reduced_mass(m_ref, m_robot) * v_rel * v_rel;
}

BodySegment segment_for_contact(double top_height, const SegmentBoundaries& boundaries) {
  const std::array<double, 5> edges{0.0, boundaries[0], boundaries[1], boundaries[2],
                                    std::numeric_limits<double>::infinity()};
  int best = 0;
  double best_overlap = -1.0;
  for (int k = 0; k < 4; ++k) {
    const double overlap = std::max(0.0, std::min(top_height, edges[k + 1]) - edges[k]);
    if (overlap > best_overlap) {
      best_overlap = overlap;
      best = k;
    }
  }
  return static_cast<BodySegment>(best);
}

std::vector<CollisionEvent> collision_events(std::span<const StepRecord> records,
                                             const CollisionModel& model) {
  const BodySegment segment = segment_for_contact(model.robot_top_height, model.boundaries);
  const double m_ref = reflected_mass(segment, model.masses);
  std::vector<CollisionEvent> out;
  for (const auto& r : records) {
    for (const auto& c : r.contacts) {
      if (!c.onset) continue;
      out.push_back({r.t, c.agent_id, segment, m_ref, c.v_rel,
                     impact_energy(m_ref, model.robot_mass, c.v_rel)});
    }
  }
  return out;
}

int energy_bin(double energy) {
  const int bin = static_cast<int>(std::floor(std::max(0.0, energy) / kEnergyBinWidth));
  return std::min(bin, kEnergyOpenBin);
}

double energy_bin_low(int bin) { return bin * kEnergyBinWidth; }

double energy_bin_high(int bin) {
  return bin >= kEnergyOpenBin ? std::numeric_limits<double>::infinity() : (bin + 1) * kEnergyBinWidth;
}

CollisionRates collision_rates(std::span<const CollisionEvent> events, double total_time) {
  CollisionRates r;
  r.total_time = total_time;
  r.n_collisions = static_cast<int>(events.size());
  for (const auto& e : events) {
    r.energy_sum += e.energy;
    ++r.histogram[energy_bin(e.energy)];
  }
  if (total_time > 0.0) {
    r.f_c = r.n_collisions / total_time;
    r.q = r.energy_sum / total_time;
  }
  return r;
}

}  // namespace crowdbench
