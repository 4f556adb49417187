#include "c3a/arbitration.hpp"

namespace c3a {

namespace {

constexpr double kStampTolerance = 1e-9;

VelocityCommand relabel(const VelocityCommand& cmd, ControlMode source, double now) {
  return {cmd.linear, cmd.angular, source, now};
}

}  // namespace

ArbitrationState initial_state(const MuxConfig& cfg, double now) {
  ArbitrationState s;
  s.mode = cfg.machine_enabled ? cfg.initial_mode : ControlMode::Human;
  s.last_human_cmd_stamp = now;
  return s;
}

bool human_paused(const ArbitrationState& s, const PriorityConfig& cfg, double now) {
  return now - s.last_human_cmd_stamp >= cfg.pause_timeout - kStampTolerance;
}

MuxStep mux_step(const ArbitrationState& state, const std::optional<VelocityCommand>& human_cmd,
                 const VelocityCommand& machine_cmd, TrendLabel trend, const MuxConfig& cfg, double now) {
  MuxStep out{state, {}, std::nullopt};
  ArbitrationState& s = out.state;

  if (human_cmd) {
    s.last_human_cmd_stamp = now;
    if (s.mode == ControlMode::Machine) {
      s.mode = ControlMode::Human;
      ++s.reclaim_count;
      out.announcement = ModeAnnouncement{ControlMode::Human, ModeCause::Reclaim, now};
    }
    out.command = relabel(*human_cmd, ControlMode::Human, now);
    return out;
  }

  if (s.mode == ControlMode::Human) {
    if (cfg.machine_enabled && human_paused(s, cfg.priority, now) && cfg.priority.takes_over_on(trend)) {
      s.mode = ControlMode::Machine;
      ++s.takeover_count;
      out.announcement = ModeAnnouncement{ControlMode::Machine, ModeCause::Takeover, now};
      out.command = relabel(machine_cmd, ControlMode::Machine, now);
    } else {
      out.command = VelocityCommand{0.0, 0.0, ControlMode::Human, now};
    }
    return out;
  }

  out.command = relabel(machine_cmd, ControlMode::Machine, now);
  return out;
}

}  // namespace c3a
