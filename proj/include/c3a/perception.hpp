#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "c3a/grid.hpp"
#include "c3a/types.hpp"
#include "c3a/world_sim.hpp"

namespace c3a {

// ---------------------------------------------------------------------------
// Occupancy mapping

struct MappingParams {
  double p_hit = 0.7;
  double p_free = 0.4;
  double l_max = 10.0;
  double l_thresh = 0.85;

  double l_occ() const { return std::log(p_hit / (1.0 - p_hit)); }
  double l_free() const { return std::log(p_free / (1.0 - p_free)); }
};

struct OccupancyGridMap {
  GridGeometry geometry;
  std::vector<double> logodds;

  OccupancyGridMap() = default;
  explicit OccupancyGridMap(const GridGeometry& g) : geometry(g), logodds(g.size(), 0.0) {}
};

enum class Occupancy : std::uint8_t { Free, Occupied, Unknown };

struct TernaryGrid {
  GridGeometry geometry;
  std::vector<Occupancy> cells;

  friend bool operator==(const TernaryGrid&, const TernaryGrid&) = default;

  Occupancy at(CellIndex c) const { return cells[geometry.index(c)]; }
};

/// Known-pose log-odds update along every beam of a scan.
void integrate_scan(OccupancyGridMap& map, const Pose2D& pose, const LaserScan& scan,
                    const MappingParams& params = {});

TernaryGrid classify(const OccupancyGridMap& map, const MappingParams& params = {});

/// Ground-truth ternary view of a world (walls occupied, everything else free).
TernaryGrid ternary_from_world(const GridWorld& world);

// ---------------------------------------------------------------------------
// Monte-Carlo localization

struct Particle {
  Pose2D pose;
  double weight = 0.0;
};

struct ParticleSet {
  std::vector<Particle> particles;
  std::uint64_t rng_seed = 0;
  std::mt19937_64 rng;

  ParticleSet() = default;
  explicit ParticleSet(std::uint64_t seed) : rng_seed(seed), rng(seed) {}
};

struct PoseEstimate {
  Pose2D mean;
  std::array<double, 9> covariance{};  // row-major 3x3 over (x, y, theta)
  double stamp = 0.0;

  friend bool operator==(const PoseEstimate&, const PoseEstimate&) = default;
};

struct MclParams {
  int particle_count = 500;
  double sigma_trans = 0.02;  // m per tick
  double sigma_rot = 0.01;    // rad per tick
  double sigma_hit = 0.2;
  double z_hit = 0.9;
  double z_rand = 0.1;
  double max_field_distance = 2.0;
  int beam_stride = 6;
  double resample_ess_fraction = 0.5;
  // Spread used when particles are scattered around an initial pose guess.
  double init_sigma_xy = 0.5;
  double init_sigma_theta = std::numbers::pi / 12.0;
};

/// Distance from every cell to the nearest OCCUPIED cell, precomputed once per map.
class LikelihoodField {
 public:
  LikelihoodField() = default;
  LikelihoodField(const TernaryGrid& grid, double max_distance);

  const TernaryGrid& grid() const { return grid_; }
  /// Distance (m) from a world point to the nearest occupied cell centre, or
  /// nullopt when the point lies outside the map.
  std::optional<double> distance_at(double x, double y) const;
  /// Per-cell distances, clamped to the field's max distance.
  const std::vector<double>& distances() const { return distance_; }

 private:
  TernaryGrid grid_;
  std::vector<double> distance_;
  double max_distance_ = 0.0;
};

enum class MclStatus { Ok, AllWeightsZero };

struct MclResult {
  PoseEstimate estimate;
  MclStatus status = MclStatus::Ok;
  bool resampled = false;
};

/// Gaussian scatter around a pose guess, rejecting samples in occupied or
/// off-map cells.
void scatter_around(ParticleSet& set, const Pose2D& guess, const TernaryGrid& map, const MclParams& params);
/// Uniform scatter over FREE cells.
void scatter_uniform(ParticleSet& set, const TernaryGrid& map, int count);

/// Weighted mean (circular mean for heading) and covariance of a particle set.
PoseEstimate estimate_pose(const ParticleSet& set, double stamp);

/// One predict / weight / resample cycle. `odom_delta` is the motion since the
/// previous step expressed in the previous robot frame.
MclResult mcl_step(ParticleSet& set, const Pose2D& odom_delta, const LaserScan& scan, const LikelihoodField& field,
                   const MclParams& params = {});
MclResult mcl_step(ParticleSet& set, const Pose2D& odom_delta, const LaserScan& scan, const TernaryGrid& map,
                   const MclParams& params = {});

/// Relative motion from `from` to `to`, expressed in the frame of `from`.
Pose2D relative_motion(const Pose2D& from, const Pose2D& to);

// ---------------------------------------------------------------------------
// Map files: binary PGM raster plus YAML-style metadata sidecar.

inline constexpr std::uint8_t kRasterFree = 254;
inline constexpr std::uint8_t kRasterOccupied = 0;
inline constexpr std::uint8_t kRasterUnknown = 205;

/// Writes `<basename>.pgm` and `<basename>.yaml`.
void save_map(const TernaryGrid& grid, const std::string& basename);
TernaryGrid load_map(const std::string& basename);
/// As load_map, additionally rejecting files whose geometry differs from `expected`.
TernaryGrid load_map(const std::string& basename, const GridGeometry& expected);

}  // namespace c3a
