#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "c3a/grid.hpp"
#include "c3a/types.hpp"

namespace c3a {

enum class WorldCell : std::uint8_t { Free, Wall };

/// Ground-truth maze the robot lives in.
struct GridWorld {
  GridGeometry geometry;
  std::vector<WorldCell> cells;  // row-major, row 0 at the bottom
  Pose2D start_pose{};
  double robot_radius = 0.3;

  bool is_wall(CellIndex c) const { return !geometry.contains(c) || cells[geometry.index(c)] == WorldCell::Wall; }
};

struct ScanParams {
  double angle_min = -std::numbers::pi / 2.0;
  double angle_max = std::numbers::pi / 2.0;
  int beam_count = 181;
  double range_max = 8.0;

  double angle_increment() const { return (angle_max - angle_min) / (beam_count - 1); }
};

struct LaserScan {
  double angle_min = 0.0;
  double angle_max = 0.0;
  double angle_increment = 0.0;
  double range_max = 0.0;
  std::vector<double> ranges;
  double stamp = 0.0;

  friend bool operator==(const LaserScan&, const LaserScan&) = default;

  double beam_angle(std::size_t k) const { return angle_min + static_cast<double>(k) * angle_increment; }
};

/// Fixed-step simulation time. Time is derived from the tick count so that it
/// never accumulates rounding error.
class SimClock {
 public:
  explicit SimClock(double dt = 0.05);

  double dt() const { return dt_; }
  std::int64_t tick_count() const { return ticks_; }
  double now() const { return static_cast<double>(ticks_) * dt_; }
  void tick() { ++ticks_; }

 private:
  double dt_;
  std::int64_t ticks_ = 0;
};

/// Exact unicycle integration over one step.
Pose2D step_kinematics(const Pose2D& pose, const VelocityCommand& cmd, double dt);

/// True if a disc of `radius` centred at (x, y) overlaps any wall cell.
bool disc_collides(const GridWorld& world, double x, double y, double radius);

/// step_kinematics followed by collision handling: a translation whose swept
/// disc touches a wall is rejected, the heading change is kept.
Pose2D advance(const GridWorld& world, const Pose2D& pose, const VelocityCommand& cmd, double dt);

/// Distance along a ray to the first wall cell boundary, capped at max_range.
double cast_ray(const GridWorld& world, double x, double y, double angle, double max_range);

LaserScan cast_scan(const GridWorld& world, const Pose2D& pose, const ScanParams& params, double stamp = 0.0);

/// Parse the ASCII maze format ('#' wall, '.' free, 'S' start).
GridWorld load_maze(std::string_view text, double resolution = 0.25, double robot_radius = 0.3);
GridWorld load_maze_file(const std::string& path, double resolution = 0.25, double robot_radius = 0.3);

}  // namespace c3a
