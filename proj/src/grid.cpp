#include "c3a/grid.hpp"

#include <cmath>
#include <limits>

namespace c3a {

void traverse_ray(const GridGeometry& g, double x, double y, double angle, double max_t,
                  const std::function<bool(CellIndex, double)>& visit) {
  const double res = g.resolution;
  const double dx = std::cos(angle);
  const double dy = std::sin(angle);
  CellIndex c = g.world_to_cell(x, y);
  if (!visit(c, 0.0)) return;

  constexpr double inf = std::numeric_limits<double>::infinity();
  const int step_i = dx > 0 ? 1 : -1;
  const int step_j = dy > 0 ? 1 : -1;
  const double lx = x - g.origin.x;
  const double ly = y - g.origin.y;
  double t_max_x = inf;
  double t_max_y = inf;
  double t_delta_x = inf;
  double t_delta_y = inf;
  if (std::abs(dx) > 1e-12) {
    t_max_x = ((dx > 0 ? (c.i + 1) : c.i) * res - lx) / dx;
    t_delta_x = res / std::abs(dx);
  }
  if (std::abs(dy) > 1e-12) {
    t_max_y = ((dy > 0 ? (c.j + 1) : c.j) * res - ly) / dy;
    t_delta_y = res / std::abs(dy);
  }
  while (true) {
    double t;
    if (t_max_x < t_max_y) {
      t = t_max_x;
      t_max_x += t_delta_x;
      c.i += step_i;
    } else {
      t = t_max_y;
      t_max_y += t_delta_y;
      c.j += step_j;
    }
    if (t >= max_t) return;
    if (!visit(c, t)) return;
  }
}

namespace {

// 1-D squared distance transform of a sampled function (lower envelope of parabolas).
void edt_1d(const std::vector<double>& f, std::vector<double>& d, std::vector<int>& v, std::vector<double>& z) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  const int n = static_cast<int>(f.size());
  int k = -1;
  for (int q = 0; q < n; ++q) {
    if (f[q] == inf) continue;
    if (k < 0) {
      k = 0;
      v[0] = q;
      z[0] = -inf;
      z[1] = inf;
      continue;
    }
    double s;
    while (true) {
      const int p = v[k];
      s = ((f[q] + double(q) * q) - (f[p] + double(p) * p)) / (2.0 * (q - p));
      if (s <= z[k] && k > 0) {
        --k;
      } else {
        break;
      }
    }
    if (s <= z[k]) {
      // k == 0 and the new parabola dominates everywhere
      v[0] = q;
      z[0] = -inf;
      z[1] = inf;
      continue;
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = inf;
  }
  if (k < 0) {
    std::fill(d.begin(), d.end(), inf);
    return;
  }
  int j = 0;
  for (int q = 0; q < n; ++q) {
    while (z[j + 1] < q) ++j;
    const double diff = q - v[j];
    d[q] = diff * diff + f[v[j]];
  }
}

}  // namespace

std::vector<double> distance_transform(const GridGeometry& g, const std::vector<bool>& sources) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  const int w = g.width;
  const int h = g.height;
  std::vector<double> sq(g.size(), inf);
  for (std::size_t k = 0; k < sq.size(); ++k) {
    if (sources[k]) sq[k] = 0.0;
  }
  const int n = std::max(w, h);
  std::vector<double> f(n), d(n), z(n + 1);
  std::vector<int> v(n);
  // columns
  f.resize(h);
  d.resize(h);
  for (int i = 0; i < w; ++i) {
    for (int j = 0; j < h; ++j) f[j] = sq[g.index({i, j})];
    edt_1d(f, d, v, z);
    for (int j = 0; j < h; ++j) sq[g.index({i, j})] = d[j];
  }
  // rows
  f.resize(w);
  d.resize(w);
  for (int j = 0; j < h; ++j) {
    for (int i = 0; i < w; ++i) f[i] = sq[g.index({i, j})];
    edt_1d(f, d, v, z);
    for (int i = 0; i < w; ++i) sq[g.index({i, j})] = d[i];
  }
  for (double& s : sq) s = (s == inf) ? inf : std::sqrt(s) * g.resolution;
  return sq;
}

}  // namespace c3a
