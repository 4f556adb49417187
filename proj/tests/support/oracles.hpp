#pragma once

// Independent reference implementations. None of these call into the code
// they check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <optional>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "c3a/arbitration.hpp"
#include "c3a/navigator.hpp"
#include "c3a/world_sim.hpp"

#ifndef C3A_SOURCE_DIR
#define C3A_SOURCE_DIR "."
#endif

namespace oracle {

inline std::string source_path(const std::string& rel) { return std::string(C3A_SOURCE_DIR) + "/" + rel; }

/// Forward Euler on the unicycle with a tiny step.
inline c3a::Pose2D euler(c3a::Pose2D p, double v, double w, double dt, double h = 1e-5) {
  const auto n = static_cast<long>(std::ceil(dt / h));
  const double step = dt / static_cast<double>(n);
  for (long k = 0; k < n; ++k) {
    p.x += v * std::cos(p.theta) * step;
    p.y += v * std::sin(p.theta) * step;
    p.theta += w * step;
  }
  return p;
}

/// Plain Dijkstra over the 8-connected costmap, no heuristic, no closed-set
/// shortcut. Edge weight: unit length in millionths times (256 + destination cost).
inline std::optional<std::int64_t> dijkstra(const c3a::Costmap& cm, c3a::CellIndex s, c3a::CellIndex t) {
  const int w = cm.geometry.width, h = cm.geometry.height;
  auto id = [w](int i, int j) { return static_cast<std::size_t>(j) * w + i; };
  constexpr std::int64_t inf = std::numeric_limits<std::int64_t>::max();
  std::vector<std::int64_t> dist(static_cast<std::size_t>(w) * h, inf);
  using E = std::pair<std::int64_t, std::size_t>;
  std::priority_queue<E, std::vector<E>, std::greater<>> pq;
  dist[id(s.i, s.j)] = 0;
  pq.emplace(0, id(s.i, s.j));
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d != dist[u]) continue;
    const int ui = static_cast<int>(u % w), uj = static_cast<int>(u / w);
    for (int di = -1; di <= 1; ++di) {
      for (int dj = -1; dj <= 1; ++dj) {
        if (!di && !dj) continue;
        const int vi = ui + di, vj = uj + dj;
        if (vi < 0 || vj < 0 || vi >= w || vj >= h) continue;
        const std::uint8_t c = cm.cost[id(vi, vj)];
        if (c == 255) continue;
        const std::int64_t len = (di && dj) ? 1414214 : 1000000;
        const std::int64_t nd = d + len * (256 + c);
        if (nd < dist[id(vi, vj)]) {
          dist[id(vi, vj)] = nd;
          pq.emplace(nd, id(vi, vj));
        }
      }
    }
  }
  if (dist[id(t.i, t.j)] == inf) return std::nullopt;
  return dist[id(t.i, t.j)];
}

/// Ray against every wall square with the slab test; nearest entry distance.
inline double ray(const c3a::GridWorld& world, double x, double y, double a, double max_range) {
  const auto& g = world.geometry;
  const double dx = std::cos(a), dy = std::sin(a);
  double best = max_range;
  for (int j = 0; j < g.height; ++j) {
    for (int i = 0; i < g.width; ++i) {
      if (world.cells[static_cast<std::size_t>(j) * g.width + i] != c3a::WorldCell::Wall) continue;
      const double x0 = g.origin.x + i * g.resolution, x1 = x0 + g.resolution;
      const double y0 = g.origin.y + j * g.resolution, y1 = y0 + g.resolution;
      double tmin = -std::numeric_limits<double>::infinity(), tmax = std::numeric_limits<double>::infinity();
      if (std::abs(dx) < 1e-15) {
        if (x < x0 || x > x1) continue;
      } else {
        double ta = (x0 - x) / dx, tb = (x1 - x) / dx;
        if (ta > tb) std::swap(ta, tb);
        tmin = std::max(tmin, ta);
        tmax = std::min(tmax, tb);
      }
      if (std::abs(dy) < 1e-15) {
        if (y < y0 || y > y1) continue;
      } else {
        double ta = (y0 - y) / dy, tb = (y1 - y) / dy;
        if (ta > tb) std::swap(ta, tb);
        tmin = std::max(tmin, ta);
        tmax = std::min(tmax, tb);
      }
      if (tmax < tmin || tmax < 0.0) continue;
      best = std::min(best, std::max(tmin, 0.0));
    }
  }
  return best;
}

/// True if the disc overlaps any wall square (closest-point test on every square).
inline bool disc_hits_wall(const c3a::GridWorld& world, double x, double y, double r) {
  const auto& g = world.geometry;
  for (int j = 0; j < g.height; ++j) {
    for (int i = 0; i < g.width; ++i) {
      if (world.cells[static_cast<std::size_t>(j) * g.width + i] != c3a::WorldCell::Wall) continue;
      const double x0 = g.origin.x + i * g.resolution, y0 = g.origin.y + j * g.resolution;
      const double cx = std::clamp(x, x0, x0 + g.resolution), cy = std::clamp(y, y0, y0 + g.resolution);
      if (std::hypot(x - cx, y - cy) < r) return true;
    }
  }
  return false;
}

// Normative arbitration table, parsed from docs/fsm.md.
struct FsmRow {
  c3a::CognitiveGroup group;
  c3a::ControlMode mode;
  bool human_cmd;
  bool paused;
  c3a::TrendLabel trend;
  c3a::ControlMode next_mode;
  std::string output;  // human | machine | zero
  int takeover_delta;
  int reclaim_delta;
  std::string announce;  // TAKEOVER | RECLAIM | -
};

inline std::vector<FsmRow> load_fsm_table(const std::string& path = source_path("docs/fsm.md")) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  auto mode = [](const std::string& s) {
    if (s == "HUMAN") return c3a::ControlMode::Human;
    if (s == "MACHINE") return c3a::ControlMode::Machine;
    throw std::runtime_error("bad mode " + s);
  };
  auto trend = [](const std::string& s) {
    if (s == "WORSENING") return c3a::TrendLabel::Worsening;
    if (s == "NEUTRAL") return c3a::TrendLabel::Neutral;
    if (s == "IMPROVING") return c3a::TrendLabel::Improving;
    throw std::runtime_error("bad trend " + s);
  };
  std::vector<FsmRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("| LCS", 0) != 0 && line.rfind("| HCS", 0) != 0) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, '|')) {
      const auto b = cell.find_first_not_of(' '), e = cell.find_last_not_of(' ');
      if (b != std::string::npos) f.push_back(cell.substr(b, e - b + 1));
    }
    if (f.size() != 10) throw std::runtime_error("bad fsm row: " + line);
    rows.push_back({f[0] == "LCS" ? c3a::CognitiveGroup::LCS : c3a::CognitiveGroup::HCS, mode(f[1]), f[2] == "yes",
                    f[3] == "yes", trend(f[4]), mode(f[5]), f[6], std::stoi(f[7]), std::stoi(f[8]), f[9]});
  }
  return rows;
}

/// Number of rows on which mux_step disagrees with the table.
inline int fsm_mismatches(const std::vector<FsmRow>& rows) {
  int bad = 0;
  const double now = 100.0;
  for (const FsmRow& r : rows) {
    c3a::MuxConfig cfg;
    cfg.priority = c3a::make_priority_config(r.group);
    c3a::ArbitrationState s;
    s.mode = r.mode;
    s.takeover_count = 3;
    s.reclaim_count = 5;
    s.last_human_cmd_stamp = r.paused ? now - cfg.priority.pause_timeout - 0.01 : now - 0.01;
    const c3a::VelocityCommand human{0.4, -0.2, c3a::ControlMode::Machine, 7.0};
    const c3a::VelocityCommand machine{0.9, 0.3, c3a::ControlMode::Machine, now};
    const auto out = c3a::mux_step(s, r.human_cmd ? std::optional(human) : std::nullopt, machine, r.trend, cfg, now);
    bool ok = out.state.mode == r.next_mode && out.state.takeover_count == 3 + r.takeover_delta &&
              out.state.reclaim_count == 5 + r.reclaim_delta;
    if (r.output == "human") {
      ok = ok && out.command.linear == human.linear && out.command.angular == human.angular &&
           out.command.source == c3a::ControlMode::Human;
    } else if (r.output == "machine") {
      ok = ok && out.command.linear == machine.linear && out.command.angular == machine.angular &&
           out.command.source == c3a::ControlMode::Machine;
    } else {
      ok = ok && out.command.linear == 0.0 && out.command.angular == 0.0 &&
           out.command.source == c3a::ControlMode::Human;
    }
    if (r.announce == "-") {
      ok = ok && !out.announcement;
    } else {
      const auto cause = r.announce == "TAKEOVER" ? c3a::ModeCause::Takeover : c3a::ModeCause::Reclaim;
      ok = ok && out.announcement && out.announcement->cause == cause && out.announcement->mode == r.next_mode;
    }
    if (!ok) ++bad;
  }
  return bad;
}

}  // namespace oracle
