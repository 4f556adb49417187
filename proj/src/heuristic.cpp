#include "c3a/heuristic.hpp"

#include "c3a/error.hpp"

namespace c3a {

namespace {
constexpr double kTimeEps = 1e-9;
}

GoalPose make_goal(const GridGeometry& geometry, CellIndex cell, double stamp) {
  return {geometry.cell_center(cell), cell, stamp};
}

DistanceSample sample_distance(const Pose2D& pose, const std::optional<GoalPose>& goal, const GlobalPlan* plan,
                               double t) {
  if (!goal) throw Error(ErrorKind::NoGoal, "no shared goal has been set");
  if (plan && !plan->waypoints.empty()) return {t, remaining_path_length(*plan, pose), DistanceBasis::Path};
  return {t, distance(pose, goal->pose), DistanceBasis::Euclidean};
}

TrendLabel classify_trend(std::span<const DistanceSample> window, const PriorityConfig& config) {
  if (window.empty()) return TrendLabel::Neutral;
  const DistanceSample& newest = window.back();
  const DistanceSample* oldest = nullptr;
  for (const auto& s : window) {
    if (s.t >= newest.t - config.trend_window - kTimeEps) {
      oldest = &s;
      break;
    }
  }
  if (oldest == nullptr || newest.t - oldest->t < config.trend_window - kTimeEps) return TrendLabel::Neutral;
  const double delta = newest.d - oldest->d;
  if (delta > config.worsen_epsilon) return TrendLabel::Worsening;
  if (delta < -config.worsen_epsilon) return TrendLabel::Improving;
  return TrendLabel::Neutral;
}

SmartDriverDecision recommend(TrendLabel trend, const PriorityConfig& config, ControlMode mode, bool human_paused,
                              double stamp) {
  SmartDriverDecision d{mode, trend, stamp};
  if (mode == ControlMode::Human && human_paused && config.takes_over_on(trend)) d.recommended = ControlMode::Machine;
  if (mode == ControlMode::Machine && !human_paused) d.recommended = ControlMode::Human;
  return d;
}

TrendMonitor::TrendMonitor(PriorityConfig config, double sample_period)
    : config_(std::move(config)), sample_period_(sample_period) {}

bool TrendMonitor::due(double now) const { return !last_sample_ || now - *last_sample_ >= sample_period_ - kTimeEps; }

TrendLabel TrendMonitor::add(const DistanceSample& sample) {
  last_sample_ = sample.t;
  window_.push_back(sample);
  while (window_.size() > 1 && window_.front().t < sample.t - config_.trend_window - kTimeEps) window_.pop_front();
  const std::vector<DistanceSample> view(window_.begin(), window_.end());
  trend_ = classify_trend(view, config_);
  return trend_;
}

}  // namespace c3a
