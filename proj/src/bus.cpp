#include "c3a/bus.hpp"

#include "c3a/codec.hpp"
#include "c3a/error.hpp"

namespace c3a {

namespace {

constexpr std::size_t idx(Topic t) { return static_cast<std::size_t>(t); }

template <class T>
constexpr std::size_t alt() {
  return [&]<std::size_t... I>(std::index_sequence<I...>) {
    std::size_t found = std::variant_npos;
    ((std::is_same_v<T, std::variant_alternative_t<I, Payload>> ? (found = I) : 0), ...);
    return found;
  }(std::make_index_sequence<std::variant_size_v<Payload>>{});
}

}  // namespace

std::string_view topic_name(Topic t) {
  switch (t) {
    case Topic::CmdVelHuman: return "/cmd_vel_human";
    case Topic::CmdVelMachine: return "/cmd_vel_machine";
    case Topic::CmdVel: return "/cmd_vel";
    case Topic::Scan: return "/scan";
    case Topic::PoseTruth: return "/pose_truth";
    case Topic::PoseEstimate: return "/pose_estimate";
    case Topic::Map: return "/map";
    case Topic::Goal: return "/goal";
    case Topic::Mode: return "/mode";
    case Topic::MetricDistance: return "/metric/distance";
    case Topic::MetricTrend: return "/metric/trend";
    case Topic::StateAction: return "/state_action";
    case Topic::Episode: return "/episode";
    case Topic::CognitiveScore: return "/cognitive_score";
  }
  return "";
}

Topic topic_from_name(std::string_view name) {
  for (Topic t : kAllTopics) {
    if (topic_name(t) == name) return t;
  }
  throw Error(ErrorKind::UnknownTopic, "'" + std::string(name) + "' is not in the topic roster");
}

bool is_latched(Topic t) {
  return t == Topic::Map || t == Topic::Goal || t == Topic::Mode || t == Topic::CognitiveScore;
}

std::size_t payload_index_for(Topic t) {
  switch (t) {
    case Topic::CmdVelHuman:
    case Topic::CmdVelMachine:
    case Topic::CmdVel: return alt<VelocityCommand>();
    case Topic::Scan: return alt<LaserScan>();
    case Topic::PoseTruth: return alt<Pose2D>();
    case Topic::PoseEstimate: return alt<PoseEstimate>();
    case Topic::Map: return alt<TernaryGrid>();
    case Topic::Goal: return alt<GoalPose>();
    case Topic::Mode: return alt<ModeAnnouncement>();
    case Topic::MetricDistance: return alt<DistanceSample>();
    case Topic::MetricTrend: return alt<TrendSignal>();
    case Topic::StateAction: return alt<StateAction>();
    case Topic::Episode: return alt<EpisodicEvent>();
    case Topic::CognitiveScore: return alt<CognitiveProfile>();
  }
  return std::variant_npos;
}

std::optional<Envelope> Subscription::next() {
  if (queue_.empty()) return std::nullopt;
  Envelope e = std::move(queue_.front());
  queue_.pop_front();
  return e;
}

std::vector<Envelope> Subscription::drain() {
  std::vector<Envelope> out(std::make_move_iterator(queue_.begin()), std::make_move_iterator(queue_.end()));
  queue_.clear();
  return out;
}

const Envelope& Bus::publish(Topic topic, double stamp, Payload payload) {
  if (payload.index() != payload_index_for(topic)) {
    throw Error(ErrorKind::PayloadTypeMismatch, "wrong payload type for " + std::string(topic_name(topic)));
  }
  Envelope env;
  env.topic = topic;
  env.stamp = stamp;
  env.seq = ++seq_[idx(topic)];
  env.payload = std::make_shared<const Payload>(std::move(payload));
  last_[idx(topic)] = env;
  if (is_latched(topic)) latched_[idx(topic)] = env;

  // Index loop: a callback may subscribe or publish while we deliver.
  const std::size_t n = subscribers_.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Subscriber& sub = subscribers_[k];
    if (sub.filter && *sub.filter != topic) continue;
    if (sub.callback) {
      Callback cb = sub.callback;
      cb(env);
    } else if (auto q = sub.queue.lock()) {
      q->queue_.push_back(env);
    }
  }
  return *last_[idx(topic)];
}

const Envelope& Bus::publish(const Envelope& envelope) {
  if (!envelope.payload) throw Error(ErrorKind::PayloadTypeMismatch, "envelope has no payload");
  return publish(envelope.topic, envelope.stamp, *envelope.payload);
}

void Bus::attach(Subscriber sub) {
  // Latched values are replayed to the new subscriber before anything else.
  for (Topic t : kAllTopics) {
    if (sub.filter && *sub.filter != t) continue;
    const auto& l = latched_[idx(t)];
    if (!l) continue;
    if (sub.callback) {
      sub.callback(*l);
    } else if (auto q = sub.queue.lock()) {
      q->queue_.push_back(*l);
    }
  }
  subscribers_.push_back(std::move(sub));
}

std::shared_ptr<Subscription> Bus::subscribe(Topic topic) {
  auto s = std::make_shared<Subscription>();
  attach({topic, s, {}});
  return s;
}

std::shared_ptr<Subscription> Bus::subscribe_all() {
  auto s = std::make_shared<Subscription>();
  attach({std::nullopt, s, {}});
  return s;
}

void Bus::subscribe(Topic topic, Callback callback) { attach({topic, {}, std::move(callback)}); }

void Bus::subscribe_all(Callback callback) { attach({std::nullopt, {}, std::move(callback)}); }

std::optional<Envelope> Bus::latched(Topic topic) const { return latched_[idx(topic)]; }

// ---------------------------------------------------------------------------

std::vector<Topic> topics_for_label(int label) {
  switch (label) {
    case 1: return {Topic::StateAction};
    case 2: return {Topic::Map};
    case 3: return {Topic::Goal};
    case 4: return {Topic::MetricTrend, Topic::MetricDistance};
    case 5:
    case 7: return {Topic::Episode};
    case 6: return {Topic::PoseEstimate};
    default: return {};
  }
}

bool client_may_publish(Topic t) { return t == Topic::CmdVelHuman || t == Topic::Goal; }

std::string bridge_encode(const Envelope& envelope) {
  json data = std::visit([](const auto& v) { return json(v); }, *envelope.payload);
  json frame{{"topic", topic_name(envelope.topic)},
             {"stamp", envelope.stamp},
             {"seq", envelope.seq},
             {"data", std::move(data)}};
  return frame.dump();
}

namespace {

template <class T>
Payload decode_as(const json& data) {
  return data.get<T>();
}

Payload decode_payload(Topic topic, const json& data) {
  switch (topic) {
    case Topic::CmdVelHuman:
    case Topic::CmdVelMachine:
    case Topic::CmdVel: return decode_as<VelocityCommand>(data);
    case Topic::Scan: return decode_as<LaserScan>(data);
    case Topic::PoseTruth: return decode_as<Pose2D>(data);
    case Topic::PoseEstimate: return decode_as<PoseEstimate>(data);
    case Topic::Map: return decode_as<TernaryGrid>(data);
    case Topic::Goal: return decode_as<GoalPose>(data);
    case Topic::Mode: return decode_as<ModeAnnouncement>(data);
    case Topic::MetricDistance: return decode_as<DistanceSample>(data);
    case Topic::MetricTrend: return decode_as<TrendSignal>(data);
    case Topic::StateAction: return decode_as<StateAction>(data);
    case Topic::Episode: return decode_as<EpisodicEvent>(data);
    case Topic::CognitiveScore: break;
  }
  return decode_as<CognitiveProfile>(data);
}

}  // namespace

Envelope bridge_decode(std::string_view frame) {
  json j;
  try {
    j = json::parse(frame);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::MalformedFrame, std::string("not JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorKind::MalformedFrame, "frame must be a JSON object");
  for (const char* key : {"topic", "data"}) {
    if (!j.contains(key)) throw Error(ErrorKind::MalformedFrame, std::string("frame missing \"") + key + "\"");
  }
  if (!j["topic"].is_string()) throw Error(ErrorKind::MalformedFrame, "\"topic\" must be a string");
  Envelope env;
  env.topic = topic_from_name(j["topic"].get<std::string>());
  try {
    // Clients may leave stamp and seq out; the receiver assigns both.
    if (j.contains("stamp")) env.stamp = j["stamp"].get<double>();
    if (j.contains("seq")) env.seq = j["seq"].get<std::uint64_t>();
    env.payload = std::make_shared<const Payload>(decode_payload(env.topic, j.at("data")));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::MalformedFrame, std::string("bad frame body: ") + e.what());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::MalformedFrame) throw;
    throw Error(ErrorKind::MalformedFrame, e.what());
  }
  return env;
}

}  // namespace c3a
