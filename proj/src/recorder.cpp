#include "c3a/recorder.hpp"

#include <algorithm>

namespace c3a {

MemoryRecorder::MemoryRecorder(Bus& bus, MemoryStore& store, double position_period)
    : bus_(bus), store_(store), position_period_(position_period) {
  for (Topic t : {Topic::CognitiveScore, Topic::Goal, Topic::PoseEstimate, Topic::StateAction, Topic::Mode}) {
    bus_.subscribe(t, [this](const Envelope& env) { on_envelope(env); });
  }
}

void MemoryRecorder::on_envelope(const Envelope& env) {
  if (finished_) return;
  switch (env.topic) {
    case Topic::CognitiveScore:
      store_.put({ProceduralKey::CognitiveScore, env.stamp, env.as<CognitiveProfile>()});
      break;
    case Topic::Goal:
      store_.put({ProceduralKey::Goal, env.stamp, env.as<GoalPose>()});
      goal_stamp_ = env.stamp;
      emit(EpisodeKind::GoalSet, env.stamp, env.stamp);
      break;
    case Topic::PoseEstimate:
      if (!last_position_stamp_ || env.stamp - *last_position_stamp_ >= position_period_ - 1e-9) {
        store_.put({ProceduralKey::AgentPosition, env.stamp, env.as<PoseEstimate>().mean});
        last_position_stamp_ = env.stamp;
      }
      break;
    case Topic::StateAction:
      store_.put({ProceduralKey::StateAction, env.stamp, env.as<StateAction>()});
      break;
    case Topic::Mode: {
      const auto& m = env.as<ModeAnnouncement>();
      if (m.cause == ModeCause::Init) break;
      close_segment(env.stamp);
      open_ = OpenSegment{m.cause == ModeCause::Takeover ? EpisodeKind::Takeover : EpisodeKind::Reclaim, env.stamp};
      break;
    }
    default:
      break;
  }
}

void MemoryRecorder::close_segment(double now) {
  if (!open_) return;
  emit(open_->kind, open_->t_start, std::max(now, open_->t_start));
  open_.reset();
}

void MemoryRecorder::emit(EpisodeKind kind, double t_start, double t_end) {
  const EpisodeOutcome out = store_.record_episode(kind, t_start, t_end);
  bus_.publish(Topic::Episode, t_end, out.event);
}

void MemoryRecorder::finish(double now, bool goal_reached) {
  if (finished_) return;
  close_segment(now);
  if (goal_reached) emit(EpisodeKind::GoalReached, goal_stamp_.value_or(now), now);
  finished_ = true;
}

}  // namespace c3a
