#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "c3a/perception.hpp"
#include "c3a/types.hpp"
#include "c3a/world_sim.hpp"

namespace c3a {

inline constexpr std::uint8_t kLethalCost = 255;

struct CostmapParams {
  double robot_radius = 0.3;
  double inflation_radius = 0.6;
  double decay = 10.0;  // 1/m
  std::uint8_t unknown_cost = 128;
};

struct Costmap {
  GridGeometry geometry;
  std::vector<Occupancy> occupancy;
  std::vector<std::uint8_t> cost;

  std::uint8_t at(CellIndex c) const { return cost[geometry.index(c)]; }
  bool lethal(CellIndex c) const { return at(c) == kLethalCost; }
};

/// Distance from each cell centre to the nearest OCCUPIED cell footprint
/// (the square itself, so 0 inside it). Cells with nothing within `reach`
/// metres get infinity.
std::vector<double> footprint_distance(const TernaryGrid& grid, double reach);

/// Inflated costmap: lethal within robot_radius of an occupied cell, exponential
/// decay out to inflation_radius, unknown space priced at `unknown_cost`.
Costmap build_costmap(const TernaryGrid& grid, const CostmapParams& params = {});

/// Inflation cost for a cell whose centre is `d` metres from the nearest obstacle.
std::uint8_t inflation_cost(double d, const CostmapParams& params);

struct GlobalPlan {
  std::vector<Pose2D> waypoints;
  std::vector<CellIndex> cells;
  double cost = 0.0;  // metres, cost-weighted
};

/// Fixed-point edge weights keep search results exactly comparable between
/// planners: a unit step is kStraightUnit, a diagonal kDiagonalUnit, each scaled
/// by (256 + destination cost).
inline constexpr std::int64_t kStraightUnit = 1'000'000;
inline constexpr std::int64_t kDiagonalUnit = 1'414'214;

std::int64_t edge_weight(bool diagonal, std::uint8_t destination_cost);
double plan_cost_to_meters(std::int64_t weight, double resolution);

struct PlanSearchResult {
  GlobalPlan plan;
  std::int64_t weight = 0;
};

/// A* over 8-connected cells with an octile heuristic.
PlanSearchResult plan_global_weighted(const Costmap& costmap, CellIndex start, CellIndex goal);
GlobalPlan plan_global(const Costmap& costmap, const Pose2D& start, const Pose2D& goal);

/// Metres left along the plan: distance to the nearest waypoint plus the tail.
double remaining_path_length(const GlobalPlan& plan, const Pose2D& pose);

/// Nearest non-lethal cell to `c`, searching breadth-first up to `max_radius`
/// cells away (Chebyshev). nullopt when `c` is off-map or none is found.
std::optional<CellIndex> nearest_passable(const Costmap& cm, CellIndex c, int max_radius);

enum class RecoveryMode { None, Rotate };

struct NavigatorParams {
  VelocityLimits limits{};
  double robot_radius = 0.3;
  double lookahead = 0.6;
  double heading_gain = 2.0;
  double recovery_rate = 0.8;
  double margin = 0.05;
  double replan_period = 2.0;
  double goal_tolerance = 0.3;
  CostmapParams costmap{};
};

struct NavigatorState {
  std::optional<GlobalPlan> active_plan;
  double lookahead = 0.6;
  RecoveryMode recovery = RecoveryMode::None;
  int replan_count = 0;
  bool replan_requested = false;
  double recovery_direction = 1.0;
};

/// Equivalent forward range of the swept corridor ahead of the robot: the
/// centre-beam reading that would leave the same free travel before the robot
/// disc touches any scan return.
double front_clearance_range(const LaserScan& scan, double robot_radius);

/// Lookahead point on the plan: walk forward from the nearest waypoint until the
/// accumulated path length reaches `lookahead`.
Pose2D lookahead_point(const GlobalPlan& plan, const Pose2D& pose, double lookahead);

/// Pure-pursuit law towards `target`, no obstacle handling.
VelocityCommand pursue(const Pose2D& pose, const Pose2D& target, double heading_gain, const VelocityLimits& limits);

VelocityCommand plan_local(NavigatorState& state, const Pose2D& pose, const LaserScan& scan,
                           const NavigatorParams& params = {});

/// The autonomous driver: owns its costmap and plan and produces one machine
/// command per tick.
class Navigator {
 public:
  explicit Navigator(NavigatorParams params = {});

  const NavigatorParams& params() const { return params_; }
  const NavigatorState& state() const { return state_; }
  const std::optional<Costmap>& costmap() const { return costmap_; }

  /// Rebuilds the costmap and replans now.
  bool replan(const TernaryGrid& map, const Pose2D& pose, const Pose2D& goal, double now);

  /// Per-tick update; replans when due. Returns a zero command once the goal is
  /// within tolerance or no plan exists.
  VelocityCommand update(double now, const TernaryGrid& map, const Pose2D& pose, const LaserScan& scan,
                         const Pose2D& goal);

 private:
  NavigatorParams params_;
  NavigatorState state_;
  std::optional<Costmap> costmap_;
  double last_plan_time_ = -1e9;
};

}  // namespace c3a
