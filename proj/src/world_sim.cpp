#include "c3a/world_sim.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "c3a/error.hpp"

namespace c3a {

SimClock::SimClock(double dt) : dt_(dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("SimClock: dt must be positive");
}

Pose2D step_kinematics(const Pose2D& pose, const VelocityCommand& cmd, double dt) {
  const double v = cmd.linear;
  const double w = cmd.angular;
  Pose2D out;
  if (std::abs(w) < 1e-9) {
    out.x = pose.x + v * dt * std::cos(pose.theta);
    out.y = pose.y + v * dt * std::sin(pose.theta);
    out.theta = normalize_angle(pose.theta + w * dt);
  } else {
    const double r = v / w;
    const double th1 = pose.theta + w * dt;
    out.x = pose.x + r * (std::sin(th1) - std::sin(pose.theta));
    out.y = pose.y - r * (std::cos(th1) - std::cos(pose.theta));
    out.theta = normalize_angle(th1);
  }
  return out;
}

bool disc_collides(const GridWorld& world, double x, double y, double radius) {
  const auto& g = world.geometry;
  const CellIndex lo = g.world_to_cell(x - radius, y - radius);
  const CellIndex hi = g.world_to_cell(x + radius, y + radius);
  for (int j = lo.j; j <= hi.j; ++j) {
    for (int i = lo.i; i <= hi.i; ++i) {
      if (!world.is_wall({i, j})) continue;
      const double x0 = g.origin.x + i * g.resolution;
      const double y0 = g.origin.y + j * g.resolution;
      const double cx = std::clamp(x, x0, x0 + g.resolution);
      const double cy = std::clamp(y, y0, y0 + g.resolution);
      if (std::hypot(x - cx, y - cy) < radius) return true;
    }
  }
  return false;
}

Pose2D advance(const GridWorld& world, const Pose2D& pose, const VelocityCommand& cmd, double dt) {
  const Pose2D target = step_kinematics(pose, cmd, dt);
  const double travel = std::abs(cmd.linear) * dt;
  // Sample the swept arc densely enough that no wall cell can slip between samples.
  const int samples = std::max(1, static_cast<int>(std::ceil(travel / (world.geometry.resolution * 0.25))));
  for (int s = 1; s <= samples; ++s) {
    const Pose2D p = (s == samples) ? target : step_kinematics(pose, cmd, dt * s / samples);
    if (disc_collides(world, p.x, p.y, world.robot_radius)) {
      return {pose.x, pose.y, target.theta};
    }
  }
  return target;
}

double cast_ray(const GridWorld& world, double x, double y, double angle, double max_range) {
  double range = max_range;
  traverse_ray(world.geometry, x, y, angle, max_range, [&](CellIndex c, double t_enter) {
    if (!world.is_wall(c)) return true;
    range = std::max(t_enter, 1e-6);
    return false;
  });
  return range;
}

LaserScan cast_scan(const GridWorld& world, const Pose2D& pose, const ScanParams& params, double stamp) {
  LaserScan scan;
  scan.angle_min = params.angle_min;
  scan.angle_max = params.angle_max;
  scan.angle_increment = params.angle_increment();
  scan.range_max = params.range_max;
  scan.stamp = stamp;
  scan.ranges.resize(static_cast<std::size_t>(params.beam_count));
  for (std::size_t k = 0; k < scan.ranges.size(); ++k) {
    scan.ranges[k] = cast_ray(world, pose.x, pose.y, pose.theta + scan.beam_angle(k), params.range_max);
  }
  return scan;
}

GridWorld load_maze(std::string_view text, double resolution, double robot_radius) {
  std::vector<std::string_view> rows;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::size_t end = (nl == std::string_view::npos) ? text.size() : nl;
    rows.push_back(text.substr(pos, end - pos));
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  if (!rows.empty() && rows.back().empty()) rows.pop_back();
  if (rows.empty() || rows.front().empty()) throw Error(ErrorKind::NonRectangular, "maze text is empty");
  const std::size_t width = rows.front().size();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != width) {
      throw Error(ErrorKind::NonRectangular, "row " + std::to_string(r + 1) + " has " +
                                                 std::to_string(rows[r].size()) + " columns, expected " +
                                                 std::to_string(width));
    }
  }

  GridWorld world;
  world.geometry.width = static_cast<int>(width);
  world.geometry.height = static_cast<int>(rows.size());
  world.geometry.resolution = resolution;
  world.robot_radius = robot_radius;
  world.cells.assign(world.geometry.size(), WorldCell::Free);

  int starts = 0;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const int j = world.geometry.height - 1 - static_cast<int>(r);
    for (std::size_t col = 0; col < width; ++col) {
      const CellIndex c{static_cast<int>(col), j};
      switch (rows[r][col]) {
        case '#':
          world.cells[world.geometry.index(c)] = WorldCell::Wall;
          break;
        case '.':
          break;
        case 'S':
          ++starts;
          world.start_pose = world.geometry.cell_center(c);
          break;
        default:
          throw Error(ErrorKind::UnknownSymbol, "unexpected character '" + std::string(1, rows[r][col]) +
                                                    "' at row " + std::to_string(r + 1) + ", column " +
                                                    std::to_string(col + 1));
      }
    }
  }
  if (starts != 1) {
    throw Error(ErrorKind::NoStart, "exactly one 'S' start marker is required, found " + std::to_string(starts));
  }
  const auto& g = world.geometry;
  for (int i = 0; i < g.width; ++i) {
    for (int j = 0; j < g.height; ++j) {
      const bool edge = i == 0 || j == 0 || i == g.width - 1 || j == g.height - 1;
      if (edge && world.cells[g.index({i, j})] != WorldCell::Wall) {
        throw Error(ErrorKind::OpenBoundary, "boundary cell (" + std::to_string(i) + ", " + std::to_string(j) +
                                                 ") must be '#'");
      }
    }
  }
  return world;
}

GridWorld load_maze_file(const std::string& path, double resolution, double robot_radius) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoFailure, "cannot open maze file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load_maze(ss.str(), resolution, robot_radius);
}

}  // namespace c3a
