#pragma once

#include <span>
#include <vector>

#include "crowdbench/world.hpp"

namespace crowdbench {

/// Uniform bucket grid over the corridor. Entities are identified by their
/// index in the position span handed to build(); positions outside the
/// corridor land in the nearest border cell.
class NeighborGrid {
 public:
  NeighborGrid(const WorldSpec& world, double cell_size);

  void build(std::span<const Vector2> positions);

  /// Calls fn(index, distance_squared) for every entity with center distance
  /// <= range, in ascending cell order.
  template <typename Fn>
  void for_each_within(const Vector2& p, double range, Fn&& fn) const {
    const int cx0 = cell_x(p.x - range);
    const int cx1 = cell_x(p.x + range);
    const int cy0 = cell_y(p.y - range);
    const int cy1 = cell_y(p.y + range);
    const double range_sq = range * range;
    for (int cy = cy0; cy <= cy1; ++cy) {
      for (int cx = cx0; cx <= cx1; ++cx) {
        const int cell = cy * nx_ + cx;
        for (int k = cell_start_[cell]; k < cell_start_[cell + 1]; ++k) {
          const int idx = sorted_[k];
          const double d2 = abs_sq(positions_[idx] - p);
          if (d2 <= range_sq) fn(idx, d2);
        }
      }
    }
  }

  /// Indices within range, ascending, without `exclude`.
  std::vector<int> query(const Vector2& p, double range, int exclude = -1) const;

  double cell_size() const { return cell_size_; }
  std::size_t size() const { return positions_.size(); }
  const Vector2& position(int index) const { return positions_[index]; }

 private:
  int cell_x(double x) const;
  int cell_y(double y) const;

  double cell_size_;
  int nx_;
  int ny_;
  std::vector<Vector2> positions_;
  std::vector<int> cell_start_;
  std::vector<int> sorted_;
};

}  // namespace crowdbench
