#include "crowdbench/neighbor_grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace crowdbench {

NeighborGrid::NeighborGrid(const WorldSpec& world, double cell_size) : cell_size_(cell_size) {
  if (!(cell_size > 0.0)) throw std::invalid_argument("NeighborGrid: cell size must be positive");
  nx_ = std::max(1, static_cast<int>(std::ceil(world.length / cell_size)));
  ny_ = std::max(1, static_cast<int>(std::ceil(world.width / cell_size)));
  cell_start_.assign(static_cast<std::size_t>(nx_) * ny_ + 1, 0);
}

int NeighborGrid::cell_x(double x) const {
  const double c = std::floor(x / cell_size_);
  if (!(c >= 0.0)) return 0;
  return c >= nx_ ? nx_ - 1 : static_cast<int>(c);
}

int NeighborGrid::cell_y(double y) const {
  const double c = std::floor(y / cell_size_);
  if (!(c >= 0.0)) return 0;
  return c >= ny_ ? ny_ - 1 : static_cast<int>(c);
}

void NeighborGrid::build(std::span<const Vector2> positions) {
  positions_.assign(positions.begin(), positions.end());
  std::fill(cell_start_.begin(), cell_start_.end(), 0);
  std::vector<int> cell_of(positions_.size());
  for (std::size_t i = 0; i < positions_.size(); ++i) {
    cell_of[i] = cell_y(positions_[i].y) * nx_ + cell_x(positions_[i].x);
    ++cell_start_[cell_of[i] + 1];
  }
  for (std::size_t c = 1; c < cell_start_.size(); ++c) cell_start_[c] += cell_start_[c - 1];
  sorted_.assign(positions_.size(), 0);
  std::vector<int> fill(cell_start_.begin(), cell_start_.end() - 1);
  for (std::size_t i = 0; i < positions_.size(); ++i) sorted_[fill[cell_of[i]]++] = static_cast<int>(i);
}

std::vector<int> NeighborGrid::query(const Vector2& p, double range, int exclude) const {
  std::vector<int> out;
  for_each_within(p, range, [&](int idx, double) {
    if (idx != exclude) out.push_back(idx);
  });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace crowdbench
