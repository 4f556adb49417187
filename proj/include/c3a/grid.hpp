#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "c3a/types.hpp"

namespace c3a {

/// Placement of a regular grid in the world frame. Cell (0,0) has its lower-left
/// corner at `origin`; rotation of the origin is carried for file metadata only.
struct GridGeometry {
  int width = 0;
  int height = 0;
  double resolution = 0.25;
  Pose2D origin{};

  friend bool operator==(const GridGeometry&, const GridGeometry&) = default;

  std::size_t size() const { return static_cast<std::size_t>(width) * static_cast<std::size_t>(height); }
  bool contains(CellIndex c) const { return c.i >= 0 && c.j >= 0 && c.i < width && c.j < height; }
  std::size_t index(CellIndex c) const {
    return static_cast<std::size_t>(c.j) * static_cast<std::size_t>(width) + static_cast<std::size_t>(c.i);
  }
  CellIndex cell_of(std::size_t idx) const {
    return {static_cast<int>(idx % static_cast<std::size_t>(width)),
            static_cast<int>(idx / static_cast<std::size_t>(width))};
  }

  /// Cell containing a world point (may lie outside the grid).
  CellIndex world_to_cell(double x, double y) const {
    return {static_cast<int>(std::floor((x - origin.x) / resolution)),
            static_cast<int>(std::floor((y - origin.y) / resolution))};
  }
  Pose2D cell_center(CellIndex c) const {
    return {origin.x + (c.i + 0.5) * resolution, origin.y + (c.j + 0.5) * resolution, 0.0};
  }
};

/// Visit the cells pierced by a ray in order (incremental grid traversal).
/// `visit(cell, t_enter)` receives each cell with the distance at which the ray
/// enters it (0 for the starting cell) and returns false to stop. Traversal
/// also stops once t_enter reaches max_t.
void traverse_ray(const GridGeometry& g, double x, double y, double angle, double max_t,
                  const std::function<bool(CellIndex, double)>& visit);

/// Exact Euclidean distance transform: distance in metres from every cell centre
/// to the nearest source cell centre (+inf when there is no source).
std::vector<double> distance_transform(const GridGeometry& g, const std::vector<bool>& sources);

}  // namespace c3a
