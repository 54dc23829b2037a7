#include <cmath>

#include "crowdbench/crowd_models.hpp"

namespace crowdbench {

std::optional<double> ttc_circle(const Vector2& rel_position, const Vector2& rel_velocity,
                                 double combined_radius) {
  const double c = abs_sq(rel_position) - combined_radius * combined_radius;
  if (c <= 0.0) return 0.0;
  const double b = dot(rel_position, rel_velocity);
  if (b >= 0.0) return std::nullopt;
  const double a = abs_sq(rel_velocity);
  const double disc = b * b - a * c;
  if (disc < 0.0) return std::nullopt;
  // c / (-b + sqrt(disc)) is the smaller root without cancellation.
  return c / (-b + std::sqrt(disc));
}

}  // namespace crowdbench
