#pragma once

#include <cmath>

namespace crowdbench {

/// Planar vector in meters (positions) or meters per second (velocities).
struct Vector2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vector2() = default;
  constexpr Vector2(double x_, double y_) : x(x_), y(y_) {}

  constexpr Vector2 operator-() const { return {-x, -y}; }
  constexpr Vector2 operator+(const Vector2& o) const { return {x + o.x, y + o.y}; }
  constexpr Vector2 operator-(const Vector2& o) const { return {x - o.x, y - o.y}; }
  constexpr Vector2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vector2 operator/(double s) const { return {x / s, y / s}; }
  constexpr Vector2& operator+=(const Vector2& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Vector2& operator-=(const Vector2& o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  constexpr Vector2& operator*=(double s) {
    x *= s;
    y *= s;
    return *this;
  }
  constexpr bool operator==(const Vector2&) const = default;
};

constexpr Vector2 operator*(double s, const Vector2& v) { return v * s; }

constexpr double dot(const Vector2& a, const Vector2& b) { return a.x * b.x + a.y * b.y; }

/// z-component of the 3D cross product; positive when b is counter-clockwise of a.
constexpr double det(const Vector2& a, const Vector2& b) { return a.x * b.y - a.y * b.x; }

constexpr double abs_sq(const Vector2& v) { return dot(v, v); }

inline double norm(const Vector2& v) { return std::sqrt(abs_sq(v)); }

inline Vector2 normalized(const Vector2& v) {
  const double n = norm(v);
  return n > 0.0 ? v / n : Vector2{};
}

inline bool is_finite(const Vector2& v) { return std::isfinite(v.x) && std::isfinite(v.y); }

inline Vector2 from_polar(double magnitude, double angle) {
  return {magnitude * std::cos(angle), magnitude * std::sin(angle)};
}

/// Wraps an angle into (-pi, pi].
inline double wrap_angle(double a) {
  constexpr double kTwoPi = 2.0 * M_PI;
  a = std::fmod(a + M_PI, kTwoPi);
  if (a <= 0.0) a += kTwoPi;
  return a - M_PI;
}

}  // namespace crowdbench
