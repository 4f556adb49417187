#pragma once

#include <deque>
#include <optional>
#include <span>
#include <vector>

#include "c3a/cognitive.hpp"
#include "c3a/navigator.hpp"
#include "c3a/types.hpp"

namespace c3a {

struct GoalPose {
  Pose2D pose;
  CellIndex cell;
  double stamp = 0.0;

  friend bool operator==(const GoalPose&, const GoalPose&) = default;
};

/// Goal at the centre of `cell`.
GoalPose make_goal(const GridGeometry& geometry, CellIndex cell, double stamp);

enum class DistanceBasis { Path, Euclidean };

struct DistanceSample {
  double t = 0.0;
  double d = 0.0;
  DistanceBasis basis = DistanceBasis::Euclidean;

  friend bool operator==(const DistanceSample&, const DistanceSample&) = default;
};

/// Distance to the shared goal along the current plan, or straight-line before a
/// plan exists.
DistanceSample sample_distance(const Pose2D& pose, const std::optional<GoalPose>& goal, const GlobalPlan* plan,
                               double t);

/// Newest-vs-oldest comparison over the trailing trend window.
TrendLabel classify_trend(std::span<const DistanceSample> window, const PriorityConfig& config);

struct SmartDriverDecision {
  ControlMode recommended = ControlMode::Human;
  TrendLabel trend = TrendLabel::Neutral;
  double stamp = 0.0;
};

SmartDriverDecision recommend(TrendLabel trend, const PriorityConfig& config, ControlMode mode, bool human_paused,
                              double stamp = 0.0);

/// Sliding window of distance samples taken at a fixed sim-time period.
class TrendMonitor {
 public:
  explicit TrendMonitor(PriorityConfig config, double sample_period = 0.5);

  /// True when a sample is due at time `now`.
  bool due(double now) const;
  /// Adds a sample, trims the window and re-evaluates the trend.
  TrendLabel add(const DistanceSample& sample);

  TrendLabel trend() const { return trend_; }
  const std::deque<DistanceSample>& window() const { return window_; }
  const PriorityConfig& config() const { return config_; }

 private:
  PriorityConfig config_;
  double sample_period_;
  std::optional<double> last_sample_;
  std::deque<DistanceSample> window_;
  TrendLabel trend_ = TrendLabel::Neutral;
};

}  // namespace c3a
