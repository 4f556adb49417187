#include "c3a/perception.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "c3a/error.hpp"
#include "c3a/text.hpp"

namespace c3a {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
using text::format_double;

}  // namespace

void integrate_scan(OccupancyGridMap& map, const Pose2D& pose, const LaserScan& scan, const MappingParams& params) {
  const auto& g = map.geometry;
  if (!g.contains(g.world_to_cell(pose.x, pose.y))) {
    throw Error(ErrorKind::PoseOutsideMap, "pose (" + format_double(pose.x) + ", " + format_double(pose.y) +
                                               ") is outside the map");
  }
  // Per-scan hit/pass counts, applied once at the end so repeated identical scans
  // contribute identical increments.
  std::vector<int> passes(g.size(), 0);
  std::vector<int> hits(g.size(), 0);
  std::vector<CellIndex> ray;
  for (std::size_t k = 0; k < scan.ranges.size(); ++k) {
    const double r = scan.ranges[k];
    const double angle = pose.theta + scan.beam_angle(k);
    const bool hit = r < scan.range_max;
    ray.clear();
    const double max_t = hit ? std::nextafter(r, std::numeric_limits<double>::infinity()) : scan.range_max;
    traverse_ray(g, pose.x, pose.y, angle, max_t, [&](CellIndex c, double) {
      if (!g.contains(c)) return false;
      ray.push_back(c);
      return true;
    });
    if (ray.empty()) continue;
    // A hit lands in the last cell entered at or before the measured range.
    const std::size_t free_count = hit ? ray.size() - 1 : ray.size();
    for (std::size_t m = 0; m < free_count; ++m) ++passes[g.index(ray[m])];
    if (hit) ++hits[g.index(ray.back())];
  }
  const double l_occ = params.l_occ();
  const double l_free = params.l_free();
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    if (passes[idx] == 0 && hits[idx] == 0) continue;
    const double delta = passes[idx] * l_free + hits[idx] * l_occ;
    map.logodds[idx] = std::clamp(map.logodds[idx] + delta, -params.l_max, params.l_max);
  }
}

TernaryGrid classify(const OccupancyGridMap& map, const MappingParams& params) {
  TernaryGrid out;
  out.geometry = map.geometry;
  out.cells.resize(map.logodds.size());
  for (std::size_t k = 0; k < map.logodds.size(); ++k) {
    const double l = map.logodds[k];
    out.cells[k] = l > params.l_thresh ? Occupancy::Occupied : (l < -params.l_thresh ? Occupancy::Free : Occupancy::Unknown);
  }
  return out;
}

TernaryGrid ternary_from_world(const GridWorld& world) {
  TernaryGrid out;
  out.geometry = world.geometry;
  out.cells.resize(world.cells.size());
  std::transform(world.cells.begin(), world.cells.end(), out.cells.begin(),
                 [](WorldCell c) { return c == WorldCell::Wall ? Occupancy::Occupied : Occupancy::Free; });
  return out;
}

// ---------------------------------------------------------------------------

LikelihoodField::LikelihoodField(const TernaryGrid& grid, double max_distance)
    : grid_(grid), max_distance_(max_distance) {
  std::vector<bool> sources(grid.cells.size());
  for (std::size_t k = 0; k < sources.size(); ++k) sources[k] = grid.cells[k] == Occupancy::Occupied;
  distance_ = distance_transform(grid.geometry, sources);
  for (double& d : distance_) d = std::min(d, max_distance_);
}

std::optional<double> LikelihoodField::distance_at(double x, double y) const {
  const CellIndex c = grid_.geometry.world_to_cell(x, y);
  if (!grid_.geometry.contains(c)) return std::nullopt;
  return distance_[grid_.geometry.index(c)];
}

Pose2D relative_motion(const Pose2D& from, const Pose2D& to) {
  const double dx = to.x - from.x;
  const double dy = to.y - from.y;
  const double c = std::cos(from.theta);
  const double s = std::sin(from.theta);
  return {c * dx + s * dy, -s * dx + c * dy, normalize_angle(to.theta - from.theta)};
}

void scatter_around(ParticleSet& set, const Pose2D& guess, const TernaryGrid& map, const MclParams& params) {
  const auto n = static_cast<std::size_t>(params.particle_count);
  std::normal_distribution<double> nxy(0.0, params.init_sigma_xy);
  std::normal_distribution<double> nth(0.0, params.init_sigma_theta);
  set.particles.clear();
  set.particles.reserve(n);
  const double w = 1.0 / static_cast<double>(n);
  std::size_t attempts = 0;
  while (set.particles.size() < n) {
    Pose2D p{guess.x + nxy(set.rng), guess.y + nxy(set.rng), normalize_angle(guess.theta + nth(set.rng))};
    const CellIndex c = map.geometry.world_to_cell(p.x, p.y);
    const bool ok = map.geometry.contains(c) && map.at(c) != Occupancy::Occupied;
    if (ok || ++attempts > 100 * n) set.particles.push_back({ok ? p : guess, w});
  }
}

void scatter_uniform(ParticleSet& set, const TernaryGrid& map, int count) {
  std::vector<std::size_t> candidates;
  for (std::size_t k = 0; k < map.cells.size(); ++k) {
    if (map.cells[k] == Occupancy::Free) candidates.push_back(k);
  }
  if (candidates.empty()) {
    for (std::size_t k = 0; k < map.cells.size(); ++k) {
      if (map.cells[k] != Occupancy::Occupied) candidates.push_back(k);
    }
  }
  set.particles.clear();
  if (candidates.empty()) return;
  std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> heading(-std::numbers::pi, std::numbers::pi);
  const double w = 1.0 / count;
  const auto& g = map.geometry;
  for (int m = 0; m < count; ++m) {
    const CellIndex c = g.cell_of(candidates[pick(set.rng)]);
    const double x = g.origin.x + (c.i + unit(set.rng)) * g.resolution;
    const double y = g.origin.y + (c.j + unit(set.rng)) * g.resolution;
    set.particles.push_back({{x, y, normalize_angle(heading(set.rng))}, w});
  }
}

PoseEstimate estimate_pose(const ParticleSet& set, double stamp) {
  PoseEstimate est;
  est.stamp = stamp;
  double sx = 0, sy = 0, ss = 0, sc = 0, sw = 0;
  for (const auto& p : set.particles) {
    sx += p.weight * p.pose.x;
    sy += p.weight * p.pose.y;
    ss += p.weight * std::sin(p.pose.theta);
    sc += p.weight * std::cos(p.pose.theta);
    sw += p.weight;
  }
  if (sw <= 0.0) return est;
  est.mean = {sx / sw, sy / sw, normalize_angle(std::atan2(ss, sc))};
  std::array<double, 9> cov{};
  for (const auto& p : set.particles) {
    const double d[3] = {p.pose.x - est.mean.x, p.pose.y - est.mean.y,
                         normalize_angle(p.pose.theta - est.mean.theta)};
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) cov[r * 3 + c] += p.weight * d[r] * d[c];
    }
  }
  for (double& v : cov) v /= sw;
  est.covariance = cov;
  return est;
}

namespace {

void low_variance_resample(ParticleSet& set) {
  const std::size_t n = set.particles.size();
  std::vector<Particle> out;
  out.reserve(n);
  const double step = 1.0 / static_cast<double>(n);
  std::uniform_real_distribution<double> start(0.0, step);
  const double r = start(set.rng);
  double c = set.particles[0].weight;
  std::size_t i = 0;
  for (std::size_t m = 0; m < n; ++m) {
    const double u = r + static_cast<double>(m) * step;
    while (u > c && i + 1 < n) {
      ++i;
      c += set.particles[i].weight;
    }
    out.push_back({set.particles[i].pose, step});
  }
  set.particles = std::move(out);
}

}  // namespace

MclResult mcl_step(ParticleSet& set, const Pose2D& odom_delta, const LaserScan& scan, const LikelihoodField& field,
                   const MclParams& params) {
  MclResult result;
  const TernaryGrid& map = field.grid();
  const auto& g = map.geometry;
  const std::size_t n = set.particles.size();
  if (n == 0) throw std::invalid_argument("mcl_step: empty particle set");

  // Predict.
  std::normal_distribution<double> nt(0.0, params.sigma_trans > 0 ? params.sigma_trans : 1.0);
  std::normal_distribution<double> nr(0.0, params.sigma_rot > 0 ? params.sigma_rot : 1.0);
  for (auto& p : set.particles) {
    double dx = odom_delta.x, dy = odom_delta.y, dth = odom_delta.theta;
    if (params.sigma_trans > 0) {
      dx += nt(set.rng);
      dy += nt(set.rng);
    }
    if (params.sigma_rot > 0) dth += nr(set.rng);
    const double c = std::cos(p.pose.theta);
    const double s = std::sin(p.pose.theta);
    p.pose.x += c * dx - s * dy;
    p.pose.y += s * dx + c * dy;
    p.pose.theta = normalize_angle(p.pose.theta + dth);
  }

  // Weight against the likelihood field, in the log domain.
  const double floor_p = params.z_rand / scan.range_max;
  const double inv_two_var = 1.0 / (2.0 * params.sigma_hit * params.sigma_hit);
  std::vector<double> cell_logp(field.distances().size());
  for (std::size_t k = 0; k < cell_logp.size(); ++k) {
    const double d = field.distances()[k];
    cell_logp[k] = std::log(params.z_hit * std::exp(-d * d * inv_two_var) + floor_p);
  }
  const double off_map_logp = std::log(floor_p);

  struct Beam {
    double r, c, s;
  };
  std::vector<Beam> beams;
  for (std::size_t k = 0; k < scan.ranges.size(); k += static_cast<std::size_t>(params.beam_stride)) {
    const double r = scan.ranges[k];
    if (!(r < scan.range_max)) continue;
    const double phi = scan.beam_angle(k);
    beams.push_back({r, std::cos(phi), std::sin(phi)});
  }

  std::vector<double> logw(n);
  double max_logw = kNegInf;
  for (std::size_t m = 0; m < n; ++m) {
    auto& p = set.particles[m];
    const CellIndex c = g.world_to_cell(p.pose.x, p.pose.y);
    if (!g.contains(c) || map.at(c) == Occupancy::Occupied || !(p.weight > 0.0)) {
      logw[m] = kNegInf;
      continue;
    }
    const double ct = std::cos(p.pose.theta);
    const double st = std::sin(p.pose.theta);
    double lw = std::log(p.weight);
    for (const Beam& b : beams) {
      const double ex = p.pose.x + b.r * (ct * b.c - st * b.s);
      const double ey = p.pose.y + b.r * (st * b.c + ct * b.s);
      const CellIndex e = g.world_to_cell(ex, ey);
      lw += g.contains(e) ? cell_logp[g.index(e)] : off_map_logp;
    }
    logw[m] = lw;
    max_logw = std::max(max_logw, lw);
  }

  if (max_logw == kNegInf) {
    scatter_uniform(set, map, static_cast<int>(n));
    result.status = MclStatus::AllWeightsZero;
    result.estimate = estimate_pose(set, scan.stamp);
    return result;
  }

  double total = 0.0;
  for (std::size_t m = 0; m < n; ++m) {
    const double w = logw[m] == kNegInf ? 0.0 : std::exp(logw[m] - max_logw);
    set.particles[m].weight = w;
    total += w;
  }
  double sum_sq = 0.0;
  for (auto& p : set.particles) {
    p.weight /= total;
    sum_sq += p.weight * p.weight;
  }
  result.estimate = estimate_pose(set, scan.stamp);

  const double ess = 1.0 / sum_sq;
  if (ess < params.resample_ess_fraction * static_cast<double>(n)) {
    low_variance_resample(set);
    result.resampled = true;
  }
  return result;
}

MclResult mcl_step(ParticleSet& set, const Pose2D& odom_delta, const LaserScan& scan, const TernaryGrid& map,
                   const MclParams& params) {
  return mcl_step(set, odom_delta, scan, LikelihoodField(map, params.max_field_distance), params);
}

// ---------------------------------------------------------------------------

namespace {

std::uint8_t raster_value(Occupancy o) {
  switch (o) {
    case Occupancy::Free:
      return kRasterFree;
    case Occupancy::Occupied:
      return kRasterOccupied;
    case Occupancy::Unknown:
      break;
  }
  return kRasterUnknown;
}

Occupancy occupancy_from_raster(std::uint8_t v, double occupied_thresh, double free_thresh) {
  if (v == kRasterFree) return Occupancy::Free;
  if (v == kRasterOccupied) return Occupancy::Occupied;
  if (v == kRasterUnknown) return Occupancy::Unknown;
  const double p = (255.0 - v) / 255.0;
  if (p > occupied_thresh) return Occupancy::Occupied;
  if (p < free_thresh) return Occupancy::Free;
  return Occupancy::Unknown;
}

double parse_double(const std::string& s, const std::string& what) {
  const auto v = text::parse_double(s);
  if (!v) throw Error(ErrorKind::MalformedHeader, "bad number for " + what + ": '" + s + "'");
  return *v;
}

std::string trim(const std::string& s) { return std::string(text::trim(s)); }

// Reads one whitespace-delimited PGM header token, skipping '#' comments.
std::string pgm_token(std::istream& in) {
  std::string tok;
  int ch;
  while ((ch = in.get()) != EOF) {
    if (ch == '#') {
      while ((ch = in.get()) != EOF && ch != '\n') {
      }
      continue;
    }
    if (std::isspace(ch)) {
      if (!tok.empty()) return tok;
      continue;
    }
    tok.push_back(static_cast<char>(ch));
  }
  return tok;
}

}  // namespace

void save_map(const TernaryGrid& grid, const std::string& basename) {
  const auto& g = grid.geometry;
  if (g.width <= 0 || g.height <= 0 || grid.cells.size() != g.size()) {
    throw Error(ErrorKind::GeometryMismatch, "cannot save an empty or inconsistent grid");
  }
  const std::string pgm_path = basename + ".pgm";
  const std::string yaml_path = basename + ".yaml";
  {
    std::ofstream out(pgm_path, std::ios::binary);
    if (!out) throw Error(ErrorKind::IoFailure, "cannot write " + pgm_path);
    out << "P5\n" << g.width << ' ' << g.height << "\n255\n";
    std::vector<char> row(static_cast<std::size_t>(g.width));
    for (int j = g.height - 1; j >= 0; --j) {
      for (int i = 0; i < g.width; ++i) row[i] = static_cast<char>(raster_value(grid.at({i, j})));
      out.write(row.data(), static_cast<std::streamsize>(row.size()));
    }
    if (!out) throw Error(ErrorKind::IoFailure, "failed writing " + pgm_path);
  }
  std::ofstream out(yaml_path);
  if (!out) throw Error(ErrorKind::IoFailure, "cannot write " + yaml_path);
  out << "image: " << std::filesystem::path(pgm_path).filename().string() << '\n'
      << "resolution: " << format_double(g.resolution) << '\n'
      << "origin: [" << format_double(g.origin.x) << ", " << format_double(g.origin.y) << ", "
      << format_double(g.origin.theta) << "]\n"
      << "negate: 0\n"
      << "occupied_thresh: 0.65\n"
      << "free_thresh: 0.196\n";
  if (!out) throw Error(ErrorKind::IoFailure, "failed writing " + yaml_path);
}

TernaryGrid load_map(const std::string& basename) {
  const std::string yaml_path = basename + ".yaml";
  std::ifstream meta(yaml_path);
  if (!meta) throw Error(ErrorKind::IoFailure, "cannot open " + yaml_path);
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(meta, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw Error(ErrorKind::MalformedHeader, "metadata line without ':': " + line);
    kv[trim(line.substr(0, colon))] = trim(line.substr(colon + 1));
  }
  for (const char* key : {"image", "resolution", "origin"}) {
    if (!kv.count(key)) throw Error(ErrorKind::MalformedHeader, std::string("metadata missing '") + key + "'");
  }

  TernaryGrid grid;
  auto& g = grid.geometry;
  g.resolution = parse_double(kv["resolution"], "resolution");
  if (!(g.resolution > 0.0)) throw Error(ErrorKind::MalformedHeader, "resolution must be positive");
  std::string origin = kv["origin"];
  if (origin.size() < 2 || origin.front() != '[' || origin.back() != ']') {
    throw Error(ErrorKind::MalformedHeader, "origin must be [x, y, theta]");
  }
  origin = origin.substr(1, origin.size() - 2);
  std::vector<std::string> parts;
  std::stringstream os(origin);
  for (std::string p; std::getline(os, p, ',');) parts.push_back(p);
  if (parts.size() != 3) throw Error(ErrorKind::MalformedHeader, "origin must have three components");
  g.origin = {parse_double(parts[0], "origin.x"), parse_double(parts[1], "origin.y"),
              parse_double(parts[2], "origin.theta")};
  const double occ_t = kv.count("occupied_thresh") ? parse_double(kv["occupied_thresh"], "occupied_thresh") : 0.65;
  const double free_t = kv.count("free_thresh") ? parse_double(kv["free_thresh"], "free_thresh") : 0.196;

  std::filesystem::path image(kv["image"]);
  if (image.is_relative()) image = std::filesystem::path(yaml_path).parent_path() / image;
  std::ifstream in(image, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoFailure, "cannot open " + image.string());
  if (pgm_token(in) != "P5") throw Error(ErrorKind::MalformedHeader, "raster magic is not P5");
  const std::string ws = pgm_token(in), hs = pgm_token(in), ms = pgm_token(in);
  int width = 0, height = 0, maxval = 0;
  auto parse_int = [](const std::string& s, int& out) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
  };
  if (!parse_int(ws, width) || !parse_int(hs, height) || !parse_int(ms, maxval) || width <= 0 || height <= 0) {
    throw Error(ErrorKind::MalformedHeader, "bad raster dimensions");
  }
  if (maxval != 255) throw Error(ErrorKind::MalformedHeader, "raster maxval must be 255");
  g.width = width;
  g.height = height;
  std::vector<char> bytes(g.size());
  in.read(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (in.gcount() != static_cast<std::streamsize>(bytes.size())) {
    throw Error(ErrorKind::MalformedHeader, "raster truncated: expected " + std::to_string(bytes.size()) +
                                                " bytes, got " + std::to_string(in.gcount()));
  }
  grid.cells.resize(g.size());
  std::size_t k = 0;
  for (int j = g.height - 1; j >= 0; --j) {
    for (int i = 0; i < g.width; ++i) {
      grid.cells[g.index({i, j})] = occupancy_from_raster(static_cast<std::uint8_t>(bytes[k++]), occ_t, free_t);
    }
  }
  return grid;
}

TernaryGrid load_map(const std::string& basename, const GridGeometry& expected) {
  TernaryGrid grid = load_map(basename);
  if (!(grid.geometry == expected)) {
    throw Error(ErrorKind::GeometryMismatch, "map " + basename + " is " + std::to_string(grid.geometry.width) + "x" +
                                                 std::to_string(grid.geometry.height) + ", expected " +
                                                 std::to_string(expected.width) + "x" +
                                                 std::to_string(expected.height));
  }
  return grid;
}

}  // namespace c3a
