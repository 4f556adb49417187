#pragma once

#include <optional>

#include "c3a/bus.hpp"
#include "c3a/memory.hpp"

namespace c3a {

/// Bridges the bus into a MemoryStore: stores the cognitive score, the goal,
/// 2 Hz agent positions and state-action records, and turns mode announcements
/// into TAKEOVER and RECLAIM episodes. Each episode spans the segment the
/// transition opened, up to the next transition or finish(). Recorded episodes
/// are published on /episode.
class MemoryRecorder {
 public:
  MemoryRecorder(Bus& bus, MemoryStore& store, double position_period = 0.5);
  MemoryRecorder(const MemoryRecorder&) = delete;
  MemoryRecorder& operator=(const MemoryRecorder&) = delete;

  /// Closes the open mode segment and, when given, logs GOAL_REACHED.
  void finish(double now, bool goal_reached);

  const MemoryStore& store() const { return store_; }

 private:
  struct OpenSegment {
    EpisodeKind kind;
    double t_start;
  };

  void on_envelope(const Envelope& env);
  void close_segment(double now);
  void emit(EpisodeKind kind, double t_start, double t_end);

  Bus& bus_;
  MemoryStore& store_;
  double position_period_;
  std::optional<double> last_position_stamp_;
  std::optional<OpenSegment> open_;
  std::optional<double> goal_stamp_;
  bool finished_ = false;
};

}  // namespace c3a
