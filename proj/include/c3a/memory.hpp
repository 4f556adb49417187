#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "c3a/cognitive.hpp"
#include "c3a/heuristic.hpp"
#include "c3a/types.hpp"

namespace c3a {

/// One tick of who drove, what was commanded and where the robot was.
struct StateAction {
  double stamp = 0.0;
  ControlMode mode = ControlMode::Human;
  VelocityCommand command;
  Pose2D pose;

  friend bool operator==(const StateAction&, const StateAction&) = default;
};

enum class ProceduralKey { CognitiveScore, Goal, AgentPosition, StateAction };

std::string_view to_string(ProceduralKey k);
ProceduralKey procedural_key_from_string(std::string_view s);

using ProceduralPayload = std::variant<CognitiveProfile, GoalPose, Pose2D, StateAction>;

struct ProceduralRecord {
  ProceduralKey key = ProceduralKey::AgentPosition;
  double stamp = 0.0;
  ProceduralPayload payload;

  friend bool operator==(const ProceduralRecord&, const ProceduralRecord&) = default;
};

enum class EpisodeKind { Takeover, Reclaim, GoalSet, GoalReached };

std::string_view to_string(EpisodeKind k);
EpisodeKind episode_kind_from_string(std::string_view s);

struct EpisodicEvent {
  std::int64_t event_id = 0;
  EpisodeKind kind = EpisodeKind::Takeover;
  double t_start = 0.0;
  double t_end = 0.0;
  std::vector<StateAction> trace;

  friend bool operator==(const EpisodicEvent&, const EpisodicEvent&) = default;
};

struct EpisodeOutcome {
  EpisodicEvent event;
  bool empty_interval = false;  // warning: no state-action records fell in the interval
};

/// Latest value for latest-value keys; the full ordered log for STATE_ACTION.
using MemoryValue = std::variant<CognitiveProfile, GoalPose, Pose2D, std::vector<StateAction>>;

/// Procedural and episodic stores backed by an append-only JSON-lines log.
class MemoryStore {
 public:
  /// Purely in-memory store.
  MemoryStore() = default;
  /// Store backed by `log_path`; an existing log is replayed, a missing one is
  /// created with a header line.
  explicit MemoryStore(const std::filesystem::path& log_path);

  MemoryStore(MemoryStore&&) = default;
  MemoryStore& operator=(MemoryStore&&) = default;

  void put(const ProceduralRecord& record);
  MemoryValue get(ProceduralKey key) const;
  bool contains(ProceduralKey key) const;
  const std::vector<StateAction>& state_actions() const { return state_actions_; }

  EpisodeOutcome record_episode(EpisodeKind kind, double t_start, double t_end);
  std::vector<EpisodicEvent> recall(EpisodeKind kind) const;
  const std::vector<EpisodicEvent>& episodes() const { return episodes_; }

  const std::filesystem::path& backing() const { return backing_; }

 private:
  void apply(const ProceduralRecord& record);
  void append_line(const std::string& line);

  std::filesystem::path backing_;
  std::ofstream log_;
  std::map<ProceduralKey, double> last_stamp_;
  std::map<ProceduralKey, ProceduralPayload> latest_;
  std::vector<StateAction> state_actions_;
  std::vector<EpisodicEvent> episodes_;
};

}  // namespace c3a
