#include "c3a/memory.hpp"

#include <algorithm>

#include "c3a/codec.hpp"
#include "c3a/error.hpp"

namespace c3a {

namespace {

constexpr const char* kLogFormat = "c3a-memory";
constexpr int kLogVersion = 1;

json payload_to_json(const ProceduralPayload& p) {
  return std::visit([](const auto& v) { return json(v); }, p);
}

ProceduralPayload payload_from_json(ProceduralKey key, const json& j) {
  switch (key) {
    case ProceduralKey::CognitiveScore:
      return j.get<CognitiveProfile>();
    case ProceduralKey::Goal:
      return j.get<GoalPose>();
    case ProceduralKey::AgentPosition:
      return j.get<Pose2D>();
    case ProceduralKey::StateAction:
      break;
  }
  return j.get<StateAction>();
}

bool payload_matches_key(const ProceduralRecord& r) {
  switch (r.key) {
    case ProceduralKey::CognitiveScore:
      return std::holds_alternative<CognitiveProfile>(r.payload);
    case ProceduralKey::Goal:
      return std::holds_alternative<GoalPose>(r.payload);
    case ProceduralKey::AgentPosition:
      return std::holds_alternative<Pose2D>(r.payload);
    case ProceduralKey::StateAction:
      break;
  }
  return std::holds_alternative<StateAction>(r.payload);
}

}  // namespace

std::string_view to_string(ProceduralKey k) {
  switch (k) {
    case ProceduralKey::CognitiveScore:
      return "COGNITIVE_SCORE";
    case ProceduralKey::Goal:
      return "GOAL";
    case ProceduralKey::AgentPosition:
      return "AGENT_POSITION";
    case ProceduralKey::StateAction:
      break;
  }
  return "STATE_ACTION";
}

ProceduralKey procedural_key_from_string(std::string_view s) {
  for (auto k : {ProceduralKey::CognitiveScore, ProceduralKey::Goal, ProceduralKey::AgentPosition,
                 ProceduralKey::StateAction}) {
    if (to_string(k) == s) return k;
  }
  throw Error(ErrorKind::MalformedConfig, "unknown procedural key '" + std::string(s) + "'");
}

std::string_view to_string(EpisodeKind k) {
  switch (k) {
    case EpisodeKind::Takeover:
      return "TAKEOVER";
    case EpisodeKind::Reclaim:
      return "RECLAIM";
    case EpisodeKind::GoalSet:
      return "GOAL_SET";
    case EpisodeKind::GoalReached:
      break;
  }
  return "GOAL_REACHED";
}

EpisodeKind episode_kind_from_string(std::string_view s) {
  for (auto k : {EpisodeKind::Takeover, EpisodeKind::Reclaim, EpisodeKind::GoalSet, EpisodeKind::GoalReached}) {
    if (to_string(k) == s) return k;
  }
  throw Error(ErrorKind::MalformedConfig, "unknown episode kind '" + std::string(s) + "'");
}

MemoryStore::MemoryStore(const std::filesystem::path& log_path) : backing_(log_path) {
  std::error_code ec;
  const bool existing = std::filesystem::exists(log_path, ec) && std::filesystem::file_size(log_path, ec) > 0;
  if (existing) {
    std::ifstream in(log_path);
    if (!in) throw Error(ErrorKind::IoFailure, "cannot read memory log " + log_path.string());
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      json j;
      try {
        j = json::parse(line);
      } catch (const json::exception& e) {
        throw Error(ErrorKind::IoFailure, "corrupt memory log line: " + std::string(e.what()));
      }
      if (header) {
        if (j.value("format", "") != kLogFormat || j.value("version", 0) != kLogVersion) {
          throw Error(ErrorKind::IoFailure, "memory log has an unsupported header");
        }
        header = false;
        continue;
      }
      const auto type = j.at("type").get<std::string>();
      if (type == "procedural") {
        const ProceduralKey key = procedural_key_from_string(j.at("key").get<std::string>());
        apply({key, j.at("stamp").get<double>(), payload_from_json(key, j.at("payload"))});
      } else if (type == "episode") {
        episodes_.push_back(j.at("event").get<EpisodicEvent>());
      } else {
        throw Error(ErrorKind::IoFailure, "unknown memory log record type '" + type + "'");
      }
    }
  }
  log_.open(log_path, std::ios::app);
  if (!log_) throw Error(ErrorKind::IoFailure, "cannot open memory log " + log_path.string() + " for append");
  if (!existing) append_line(json{{"format", kLogFormat}, {"version", kLogVersion}}.dump());
}

void MemoryStore::append_line(const std::string& line) {
  if (backing_.empty()) return;
  log_ << line << '\n';
  log_.flush();
  if (!log_) throw Error(ErrorKind::IoFailure, "failed writing memory log " + backing_.string());
}

void MemoryStore::apply(const ProceduralRecord& record) {
  last_stamp_[record.key] = record.stamp;
  if (record.key == ProceduralKey::StateAction) {
    state_actions_.push_back(std::get<StateAction>(record.payload));
  } else {
    latest_[record.key] = record.payload;
  }
}

void MemoryStore::put(const ProceduralRecord& record) {
  if (!payload_matches_key(record)) {
    throw std::invalid_argument("payload type does not match key " + std::string(to_string(record.key)));
  }
  const auto it = last_stamp_.find(record.key);
  if (it != last_stamp_.end() && record.stamp < it->second) {
    throw Error(ErrorKind::StaleStamp, std::string(to_string(record.key)) + " stamp " + std::to_string(record.stamp) +
                                           " is older than " + std::to_string(it->second));
  }
  append_line(json{{"type", "procedural"},
                   {"key", to_string(record.key)},
                   {"stamp", record.stamp},
                   {"payload", payload_to_json(record.payload)}}
                  .dump());
  apply(record);
}

bool MemoryStore::contains(ProceduralKey key) const {
  return key == ProceduralKey::StateAction ? !state_actions_.empty() : latest_.count(key) != 0;
}

MemoryValue MemoryStore::get(ProceduralKey key) const {
  if (key == ProceduralKey::StateAction) {
    if (state_actions_.empty()) throw Error(ErrorKind::KeyAbsent, "no STATE_ACTION records");
    return state_actions_;
  }
  const auto it = latest_.find(key);
  if (it == latest_.end()) throw Error(ErrorKind::KeyAbsent, "no " + std::string(to_string(key)) + " record");
  return std::visit(
      [](const auto& v) -> MemoryValue {
        if constexpr (std::is_same_v<std::decay_t<decltype(v)>, StateAction>) {
          return std::vector<StateAction>{v};
        } else {
          return v;
        }
      },
      it->second);
}

EpisodeOutcome MemoryStore::record_episode(EpisodeKind kind, double t_start, double t_end) {
  if (t_start > t_end) throw std::invalid_argument("record_episode: t_start must not exceed t_end");
  EpisodeOutcome out;
  out.event.event_id = static_cast<std::int64_t>(episodes_.size()) + 1;
  out.event.kind = kind;
  out.event.t_start = t_start;
  out.event.t_end = t_end;
  for (const auto& sa : state_actions_) {
    if (sa.stamp >= t_start && sa.stamp <= t_end) out.event.trace.push_back(sa);
  }
  out.empty_interval = out.event.trace.empty();
  append_line(json{{"type", "episode"}, {"event", out.event}}.dump());
  episodes_.push_back(out.event);
  return out;
}

std::vector<EpisodicEvent> MemoryStore::recall(EpisodeKind kind) const {
  std::vector<EpisodicEvent> out;
  std::copy_if(episodes_.begin(), episodes_.end(), std::back_inserter(out),
               [kind](const EpisodicEvent& e) { return e.kind == kind; });
  return out;
}

}  // namespace c3a
