#pragma once

// Scenario drivers shared by the unit tests and the acceptance binary.

#include <cmath>
#include <deque>
#include <numbers>
#include <vector>

#include "c3a/harness.hpp"
#include "c3a/navigator.hpp"
#include "c3a/perception.hpp"
#include "c3a/world_sim.hpp"

namespace scenario {

struct CoverageReport {
  c3a::TernaryGrid map;
  int reachable_free = 0;
  int reachable_classified_free = 0;
  int false_occupied = 0;
  int frontier_walls = 0;
  int frontier_walls_occupied = 0;
  int poses = 0;

  double free_fraction() const { return reachable_free ? double(reachable_classified_free) / reachable_free : 0.0; }
};

/// Known-pose mapping over a coverage tour: the robot visits every cell centre
/// its disc fits in (flood fill from the start) and takes a scan facing each
/// of the four axis directions.
inline CoverageReport coverage_tour(const c3a::GridWorld& world) {
  using namespace c3a;
  const auto& g = world.geometry;
  OccupancyGridMap grid(g);
  const CellIndex start = g.world_to_cell(world.start_pose.x, world.start_pose.y);

  std::vector<bool> seen(g.size(), false);
  std::vector<bool> stand(g.size(), false);
  std::deque<CellIndex> queue{start};
  seen[g.index(start)] = true;
  CoverageReport rep;
  while (!queue.empty()) {
    const CellIndex c = queue.front();
    queue.pop_front();
    const Pose2D centre = g.cell_center(c);
    if (!disc_collides(world, centre.x, centre.y, world.robot_radius)) {
      stand[g.index(c)] = true;
      for (int k = 0; k < 4; ++k) {
        const Pose2D p{centre.x, centre.y, k * std::numbers::pi / 2.0};
        integrate_scan(grid, p, cast_scan(world, p, ScanParams{}));
        ++rep.poses;
      }
    }
    for (auto [di, dj] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
      const CellIndex n{c.i + di, c.j + dj};
      if (!g.contains(n) || world.is_wall(n) || seen[g.index(n)]) continue;
      seen[g.index(n)] = true;
      queue.push_back(n);
    }
  }

  rep.map = classify(grid);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const CellIndex c = g.cell_of(k);
    if (world.is_wall(c)) {
      bool next_to_reachable = false;
      for (auto [di, dj] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
        const CellIndex n{c.i + di, c.j + dj};
        if (g.contains(n) && seen[g.index(n)]) next_to_reachable = true;
      }
      if (next_to_reachable) {
        ++rep.frontier_walls;
        if (rep.map.cells[k] == Occupancy::Occupied) ++rep.frontier_walls_occupied;
      }
      continue;
    }
    if (rep.map.cells[k] == Occupancy::Occupied) ++rep.false_occupied;
    if (seen[k]) {
      ++rep.reachable_free;
      if (rep.map.cells[k] == Occupancy::Free) ++rep.reachable_classified_free;
    }
  }
  return rep;
}

/// Drives the robot (true pose) along the ground-truth plan to the far-corner
/// goal and runs MCL on the known map. Returns the position error after each
/// tick; the filter starts scattered around `guess`.
inline std::vector<double> mcl_errors(const c3a::GridWorld& world, std::uint64_t seed, int ticks,
                                      const c3a::Pose2D& guess, const c3a::MclParams& params = {}) {
  using namespace c3a;
  const TernaryGrid truth = ternary_from_world(world);
  const LikelihoodField field(truth, params.max_field_distance);
  const Costmap cm = build_costmap(truth);
  const GlobalPlan plan = plan_global_weighted(cm, truth.geometry.world_to_cell(world.start_pose.x, world.start_pose.y),
                                               default_goal_cell(world))
                              .plan;
  ParticleSet set(seed);
  scatter_around(set, guess, truth, params);
  const double dt = 0.05;
  Pose2D pose = world.start_pose;
  Pose2D odom{};
  std::vector<double> errors;
  for (int k = 0; k < ticks; ++k) {
    const LaserScan scan = cast_scan(world, pose, ScanParams{}, k * dt);
    const MclResult r = mcl_step(set, odom, scan, field, params);
    errors.push_back(distance(r.estimate.mean, pose));
    VelocityCommand cmd = pursue(pose, lookahead_point(plan, pose, 0.35), 2.0, VelocityLimits{});
    const Pose2D next = advance(world, pose, cmd, dt);
    odom = relative_motion(pose, next);
    pose = next;
  }
  return errors;
}

}  // namespace scenario
