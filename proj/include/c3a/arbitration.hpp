#pragma once

#include <optional>

#include "c3a/cognitive.hpp"
#include "c3a/messages.hpp"
#include "c3a/types.hpp"

namespace c3a {

struct ArbitrationState {
  ControlMode mode = ControlMode::Human;
  double last_human_cmd_stamp = 0.0;
  int takeover_count = 0;
  int reclaim_count = 0;

  friend bool operator==(const ArbitrationState&, const ArbitrationState&) = default;
};

struct MuxConfig {
  PriorityConfig priority;
  ControlMode initial_mode = ControlMode::Human;
  /// False in human standalone runs: the machine stream never reaches the output.
  bool machine_enabled = true;
};

/// Fresh state at time `now`. The pause clock starts at `now`.
ArbitrationState initial_state(const MuxConfig& cfg, double now = 0.0);

inline ControlMode current_mode(const ArbitrationState& s) { return s.mode; }

/// True when the human has been silent for at least the pause timeout.
bool human_paused(const ArbitrationState& s, const PriorityConfig& cfg, double now);

struct MuxStep {
  ArbitrationState state;
  VelocityCommand command;
  /// Set exactly when the mode changed.
  std::optional<ModeAnnouncement> announcement;
};

/// One tick of the collaborative state machine. Any human command wins and is
/// passed through unchanged; a silent human yields to the machine only when the
/// pause has lasted long enough and the trend is in the takeover set.
MuxStep mux_step(const ArbitrationState& state, const std::optional<VelocityCommand>& human_cmd,
                 const VelocityCommand& machine_cmd, TrendLabel trend, const MuxConfig& cfg, double now);

}  // namespace c3a
