#include "crowdbench/sensors.hpp"

namespace crowdbench {

PoseDelta odometry(const PoseDelta& true_delta, const OdometryNoise& noise, std::mt19937_64& rng) {
  PoseDelta out = true_delta;
  if (noise.sigma_xy > 0.0) {
    std::normal_distribution<double> xy(0.0, noise.sigma_xy);
    out.dx += xy(rng);
    out.dy += xy(rng);
  }
  if (noise.sigma_theta > 0.0) {
    std::normal_distribution<double> th(0.0, noise.sigma_theta);
    out.dtheta += th(rng);
  }
  return out;
}

}  // namespace crowdbench
