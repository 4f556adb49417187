#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string_view>

namespace c3a {

/// Wrap an angle into (-pi, pi].
inline double normalize_angle(double a) {
  a = std::remainder(a, 2.0 * std::numbers::pi);
  if (a <= -std::numbers::pi) a += 2.0 * std::numbers::pi;
  return a;
}

struct Pose2D {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;

  friend bool operator==(const Pose2D&, const Pose2D&) = default;
};

inline double distance(const Pose2D& a, const Pose2D& b) { return std::hypot(a.x - b.x, a.y - b.y); }

/// Who is (or should be) driving. Doubles as the source tag of a command.
enum class ControlMode { Human, Machine };

std::string_view to_string(ControlMode mode);
ControlMode control_mode_from_string(std::string_view s);

struct VelocityCommand {
  double linear = 0.0;   // m/s
  double angular = 0.0;  // rad/s
  ControlMode source = ControlMode::Machine;
  double stamp = 0.0;  // sim seconds

  friend bool operator==(const VelocityCommand&, const VelocityCommand&) = default;
};

struct VelocityLimits {
  double v_max = 1.0;
  double w_max = 1.5;
};

inline VelocityCommand clamp_command(VelocityCommand cmd, const VelocityLimits& limits) {
  cmd.linear = std::clamp(cmd.linear, -limits.v_max, limits.v_max);
  cmd.angular = std::clamp(cmd.angular, -limits.w_max, limits.w_max);
  return cmd;
}

/// Integer cell index; i runs along +x (columns), j along +y (rows, bottom-up).
struct CellIndex {
  int i = 0;
  int j = 0;

  friend bool operator==(const CellIndex&, const CellIndex&) = default;
};

}  // namespace c3a
