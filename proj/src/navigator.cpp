#include "c3a/navigator.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <queue>
#include <tuple>

#include "c3a/error.hpp"

namespace c3a {

std::uint8_t inflation_cost(double d, const CostmapParams& params) {
  if (d <= params.robot_radius) return kLethalCost;
  if (d <= params.inflation_radius) {
    return static_cast<std::uint8_t>(std::lround(253.0 * std::exp(-params.decay * (d - params.robot_radius))));
  }
  return 0;
}

std::vector<double> footprint_distance(const TernaryGrid& grid, double reach) {
  const GridGeometry& g = grid.geometry;
  const double half = 0.5 * g.resolution;
  const int window = static_cast<int>(std::ceil(reach / g.resolution)) + 1;
  std::vector<double> out(g.size(), std::numeric_limits<double>::infinity());
  for (int j = 0; j < g.height; ++j) {
    for (int i = 0; i < g.width; ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (int dj = -window; dj <= window; ++dj) {
        for (int di = -window; di <= window; ++di) {
          const CellIndex o{i + di, j + dj};
          if (!g.contains(o) || grid.cells[g.index(o)] != Occupancy::Occupied) continue;
          const double gx = std::max(std::abs(di) * g.resolution - half, 0.0);
          const double gy = std::max(std::abs(dj) * g.resolution - half, 0.0);
          best = std::min(best, std::hypot(gx, gy));
        }
      }
      if (best <= reach) out[g.index(CellIndex{i, j})] = best;
    }
  }
  return out;
}

Costmap build_costmap(const TernaryGrid& grid, const CostmapParams& params) {
  if (params.inflation_radius < params.robot_radius) {
    throw std::invalid_argument("build_costmap: inflation_radius must be >= robot_radius");
  }
  Costmap cm;
  cm.geometry = grid.geometry;
  cm.occupancy = grid.cells;
  cm.cost.resize(grid.cells.size());
  const std::vector<double> dist = footprint_distance(grid, params.inflation_radius);
  for (std::size_t k = 0; k < cm.cost.size(); ++k) {
    std::uint8_t c = inflation_cost(dist[k], params);
    if (grid.cells[k] == Occupancy::Unknown && c != kLethalCost) c = std::max(c, params.unknown_cost);
    cm.cost[k] = c;
  }
  return cm;
}

std::int64_t edge_weight(bool diagonal, std::uint8_t destination_cost) {
  return (diagonal ? kDiagonalUnit : kStraightUnit) * (256 + static_cast<std::int64_t>(destination_cost));
}

double plan_cost_to_meters(std::int64_t weight, double resolution) {
  return static_cast<double>(weight) / (256.0 * static_cast<double>(kStraightUnit)) * resolution;
}

namespace {

std::int64_t octile(CellIndex a, CellIndex b) {
  const std::int64_t dx = std::abs(a.i - b.i);
  const std::int64_t dy = std::abs(a.j - b.j);
  const std::int64_t lo = std::min(dx, dy);
  const std::int64_t hi = std::max(dx, dy);
  return 256 * ((hi - lo) * kStraightUnit + lo * kDiagonalUnit);
}

constexpr int kNeighborDi[8] = {1, -1, 0, 0, 1, 1, -1, -1};
constexpr int kNeighborDj[8] = {0, 0, 1, -1, 1, -1, 1, -1};

}  // namespace

PlanSearchResult plan_global_weighted(const Costmap& costmap, CellIndex start, CellIndex goal) {
  const auto& g = costmap.geometry;
  if (!g.contains(start)) throw Error(ErrorKind::StartLethal, "start cell is outside the map");
  if (!g.contains(goal)) throw Error(ErrorKind::NoPath, "goal cell is outside the map");
  if (costmap.lethal(goal)) throw Error(ErrorKind::GoalLethal, "goal cell is lethal");
  if (costmap.lethal(start)) throw Error(ErrorKind::StartLethal, "start cell is lethal");

  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();
  std::vector<std::int64_t> best(g.size(), kInf);
  std::vector<std::int64_t> parent(g.size(), -1);
  std::vector<bool> closed(g.size(), false);
  using Entry = std::tuple<std::int64_t, std::int64_t, std::size_t>;  // f, -g, index
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;

  const std::size_t s = g.index(start);
  const std::size_t t = g.index(goal);
  best[s] = 0;
  open.emplace(octile(start, goal), 0, s);
  while (!open.empty()) {
    const auto [f, neg_g, idx] = open.top();
    open.pop();
    if (closed[idx]) continue;
    closed[idx] = true;
    if (idx == t) break;
    const CellIndex c = g.cell_of(idx);
    for (int n = 0; n < 8; ++n) {
      const CellIndex nb{c.i + kNeighborDi[n], c.j + kNeighborDj[n]};
      if (!g.contains(nb)) continue;
      const std::size_t nidx = g.index(nb);
      if (closed[nidx] || costmap.cost[nidx] == kLethalCost) continue;
      const std::int64_t cand = best[idx] + edge_weight(n >= 4, costmap.cost[nidx]);
      if (cand < best[nidx]) {
        best[nidx] = cand;
        parent[nidx] = static_cast<std::int64_t>(idx);
        open.emplace(cand + octile(nb, goal), -cand, nidx);
      }
    }
  }
  if (best[t] == kInf) throw Error(ErrorKind::NoPath, "goal is unreachable from start");

  PlanSearchResult out;
  out.weight = best[t];
  for (std::int64_t k = static_cast<std::int64_t>(t); k >= 0; k = parent[static_cast<std::size_t>(k)]) {
    out.plan.cells.push_back(g.cell_of(static_cast<std::size_t>(k)));
  }
  std::reverse(out.plan.cells.begin(), out.plan.cells.end());
  out.plan.waypoints.reserve(out.plan.cells.size());
  for (const CellIndex& c : out.plan.cells) out.plan.waypoints.push_back(g.cell_center(c));
  out.plan.cost = plan_cost_to_meters(out.weight, g.resolution);
  return out;
}

GlobalPlan plan_global(const Costmap& costmap, const Pose2D& start, const Pose2D& goal) {
  const auto& g = costmap.geometry;
  return plan_global_weighted(costmap, g.world_to_cell(start.x, start.y), g.world_to_cell(goal.x, goal.y)).plan;
}

namespace {

std::size_t nearest_waypoint(const GlobalPlan& plan, const Pose2D& pose) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < plan.waypoints.size(); ++k) {
    const double d = distance(plan.waypoints[k], pose);
    if (d < best_d) {
      best_d = d;
      best = k;
    }
  }
  return best;
}

}  // namespace

double remaining_path_length(const GlobalPlan& plan, const Pose2D& pose) {
  if (plan.waypoints.empty()) throw Error(ErrorKind::NoPlan, "remaining_path_length on an empty plan");
  const std::size_t k = nearest_waypoint(plan, pose);
  double total = distance(plan.waypoints[k], pose);
  for (std::size_t m = k; m + 1 < plan.waypoints.size(); ++m) total += distance(plan.waypoints[m], plan.waypoints[m + 1]);
  return total;
}

double front_clearance_range(const LaserScan& scan, double robot_radius) {
  double best = scan.range_max;
  for (std::size_t k = 0; k < scan.ranges.size(); ++k) {
    const double rho = scan.ranges[k];
    if (!(rho < scan.range_max)) continue;
    const double phi = scan.beam_angle(k);
    const double lateral = rho * std::sin(phi);
    const double forward = rho * std::cos(phi);
    if (forward <= 0.0 || std::abs(lateral) >= robot_radius) continue;
    const double free_travel = forward - std::sqrt(robot_radius * robot_radius - lateral * lateral);
    best = std::min(best, free_travel + robot_radius);
  }
  return std::max(best, 0.0);
}

Pose2D lookahead_point(const GlobalPlan& plan, const Pose2D& pose, double lookahead) {
  if (plan.waypoints.empty()) throw Error(ErrorKind::NoPlan, "lookahead on an empty plan");
  for (std::size_t k = nearest_waypoint(plan, pose); k < plan.waypoints.size(); ++k) {
    if (distance(plan.waypoints[k], pose) >= lookahead) return plan.waypoints[k];
  }
  return plan.waypoints.back();
}

VelocityCommand pursue(const Pose2D& pose, const Pose2D& target, double heading_gain, const VelocityLimits& limits) {
  const double err = normalize_angle(std::atan2(target.y - pose.y, target.x - pose.x) - pose.theta);
  VelocityCommand cmd;
  cmd.angular = std::clamp(heading_gain * err, -limits.w_max, limits.w_max);
  cmd.linear = limits.v_max * std::max(0.0, std::cos(err));
  return cmd;
}

VelocityCommand plan_local(NavigatorState& state, const Pose2D& pose, const LaserScan& scan,
                           const NavigatorParams& params) {
  if (!state.active_plan || state.active_plan->waypoints.empty()) {
    throw Error(ErrorKind::NoPlan, "plan_local without an active plan");
  }
  const GlobalPlan& plan = *state.active_plan;
  const Pose2D target = lookahead_point(plan, pose, state.lookahead);
  const double clearance = front_clearance_range(scan, params.robot_radius);
  const double blocked_below = params.robot_radius + params.margin;

  VelocityCommand cmd;
  cmd.source = ControlMode::Machine;
  cmd.stamp = scan.stamp;
  if (clearance < blocked_below) {
    if (state.recovery == RecoveryMode::None) {
      const double err = normalize_angle(std::atan2(target.y - pose.y, target.x - pose.x) - pose.theta);
      state.recovery_direction = err >= 0.0 ? 1.0 : -1.0;
      state.recovery = RecoveryMode::Rotate;
    }
    cmd.linear = 0.0;
    cmd.angular = std::clamp(state.recovery_direction * params.recovery_rate, -params.limits.w_max, params.limits.w_max);
    return cmd;
  }
  if (state.recovery == RecoveryMode::Rotate) {
    state.recovery = RecoveryMode::None;
    state.replan_requested = true;
  }

  const VelocityCommand p = pursue(pose, target, params.heading_gain, params.limits);
  cmd.angular = p.angular;
  cmd.linear = p.linear;
  const double slow_below = 2.0 * params.robot_radius + params.margin;
  if (clearance < slow_below) {
    cmd.linear *= std::clamp((clearance - blocked_below) / (slow_below - blocked_below), 0.0, 1.0);
  }
  return cmd;
}

// ---------------------------------------------------------------------------

Navigator::Navigator(NavigatorParams params) : params_(params) { state_.lookahead = params_.lookahead; }

std::optional<CellIndex> nearest_passable(const Costmap& cm, CellIndex c, int max_radius) {
  const auto& g = cm.geometry;
  if (g.contains(c) && !cm.lethal(c)) return c;
  std::vector<bool> seen(g.size(), false);
  std::deque<CellIndex> q;
  if (!g.contains(c)) return std::nullopt;
  q.push_back(c);
  seen[g.index(c)] = true;
  while (!q.empty()) {
    const CellIndex cur = q.front();
    q.pop_front();
    if (!cm.lethal(cur)) return cur;
    for (int n = 0; n < 8; ++n) {
      const CellIndex nb{cur.i + kNeighborDi[n], cur.j + kNeighborDj[n]};
      if (!g.contains(nb) || seen[g.index(nb)]) continue;
      if (std::max(std::abs(nb.i - c.i), std::abs(nb.j - c.j)) > max_radius) continue;
      seen[g.index(nb)] = true;
      q.push_back(nb);
    }
  }
  return std::nullopt;
}


bool Navigator::replan(const TernaryGrid& map, const Pose2D& pose, const Pose2D& goal, double now) {
  last_plan_time_ = now;
  state_.replan_requested = false;
  costmap_ = build_costmap(map, params_.costmap);
  const auto& g = costmap_->geometry;
  const auto start = nearest_passable(*costmap_, g.world_to_cell(pose.x, pose.y), 3);
  const auto target = nearest_passable(*costmap_, g.world_to_cell(goal.x, goal.y), 1);
  if (!start || !target) return false;
  try {
    state_.active_plan = plan_global_weighted(*costmap_, *start, *target).plan;
    ++state_.replan_count;
    return true;
  } catch (const Error&) {
    return false;
  }
}

VelocityCommand Navigator::update(double now, const TernaryGrid& map, const Pose2D& pose, const LaserScan& scan,
                                  const Pose2D& goal) {
  VelocityCommand idle;
  idle.source = ControlMode::Machine;
  idle.stamp = now;
  if (distance(pose, goal) <= params_.goal_tolerance) return idle;
  const bool due = !state_.active_plan || state_.replan_requested || now - last_plan_time_ >= params_.replan_period - 1e-9;
  if (due) replan(map, pose, goal, now);
  if (!state_.active_plan) return idle;
  VelocityCommand cmd = plan_local(state_, pose, scan, params_);
  cmd.stamp = now;
  return cmd;
}

}  // namespace c3a
