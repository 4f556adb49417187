#pragma once

#include <array>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "c3a/cognitive.hpp"
#include "c3a/heuristic.hpp"
#include "c3a/memory.hpp"
#include "c3a/messages.hpp"
#include "c3a/perception.hpp"
#include "c3a/types.hpp"
#include "c3a/world_sim.hpp"

namespace c3a {

/// Fixed topic roster of the interaction layer.
enum class Topic {
  CmdVelHuman,
  CmdVelMachine,
  CmdVel,
  Scan,
  PoseTruth,
  PoseEstimate,
  Map,
  Goal,
  Mode,
  MetricDistance,
  MetricTrend,
  StateAction,
  Episode,
  CognitiveScore,
};

inline constexpr std::array<Topic, 14> kAllTopics = {
    Topic::CmdVelHuman,  Topic::CmdVelMachine, Topic::CmdVel,         Topic::Scan,        Topic::PoseTruth,
    Topic::PoseEstimate, Topic::Map,           Topic::Goal,           Topic::Mode,        Topic::MetricDistance,
    Topic::MetricTrend,  Topic::StateAction,   Topic::Episode,        Topic::CognitiveScore,
};

std::string_view topic_name(Topic t);
/// Throws UnknownTopic for names outside the roster.
Topic topic_from_name(std::string_view name);
bool is_latched(Topic t);

using Payload = std::variant<VelocityCommand, LaserScan, Pose2D, PoseEstimate, TernaryGrid, GoalPose,
                             ModeAnnouncement, DistanceSample, TrendSignal, StateAction, EpisodicEvent,
                             CognitiveProfile>;

/// Variant index each topic's payload must carry.
std::size_t payload_index_for(Topic t);

/// Immutable message; the payload is shared between all receivers.
struct Envelope {
  Topic topic = Topic::CmdVel;
  double stamp = 0.0;
  std::uint64_t seq = 0;
  std::shared_ptr<const Payload> payload;

  template <class T>
  const T& as() const {
    return std::get<T>(*payload);
  }

  friend bool operator==(const Envelope& a, const Envelope& b) {
    return a.topic == b.topic && a.stamp == b.stamp && a.seq == b.seq &&
           (a.payload == b.payload || (a.payload && b.payload && *a.payload == *b.payload));
  }
};

/// Receiving end of a subscription. Envelopes queue up until drained.
class Subscription {
 public:
  std::optional<Envelope> next();
  std::vector<Envelope> drain();
  std::size_t pending() const { return queue_.size(); }

 private:
  friend class Bus;
  std::deque<Envelope> queue_;
};

/// In-process publish/subscribe backbone. Delivery is synchronous: a publish
/// reaches every current subscriber, in subscription order, before it returns.
class Bus {
 public:
  using Callback = std::function<void(const Envelope&)>;

  /// Publishes on `topic`, assigning the next per-topic sequence number.
  const Envelope& publish(Topic topic, double stamp, Payload payload);
  /// Re-publishes an envelope received from elsewhere (its seq is reassigned).
  const Envelope& publish(const Envelope& envelope);

  std::shared_ptr<Subscription> subscribe(Topic topic);
  std::shared_ptr<Subscription> subscribe_all();
  /// Callback subscriptions live as long as the bus.
  void subscribe(Topic topic, Callback callback);
  void subscribe_all(Callback callback);

  std::optional<Envelope> latched(Topic topic) const;
  std::uint64_t last_seq(Topic topic) const { return seq_[static_cast<std::size_t>(topic)]; }

 private:
  struct Subscriber {
    std::optional<Topic> filter;
    std::weak_ptr<Subscription> queue;
    Callback callback;
  };

  void attach(Subscriber sub);

  std::vector<Subscriber> subscribers_;
  std::array<std::uint64_t, kAllTopics.size()> seq_{};
  std::array<std::optional<Envelope>, kAllTopics.size()> latched_{};
  std::array<std::optional<Envelope>, kAllTopics.size()> last_{};
};

/// Thread-safe hand-off of envelopes between the tick loop and a bridge thread.
template <class T>
class HandoffQueue {
 public:
  void push(T value) {
    {
      std::lock_guard lock(mutex_);
      items_.push_back(std::move(value));
    }
    cv_.notify_one();
  }

  std::optional<T> try_pop() {
    std::lock_guard lock(mutex_);
    if (items_.empty()) return std::nullopt;
    T v = std::move(items_.front());
    items_.pop_front();
    return v;
  }

  std::vector<T> drain() {
    std::lock_guard lock(mutex_);
    std::vector<T> out(std::make_move_iterator(items_.begin()), std::make_move_iterator(items_.end()));
    items_.clear();
    return out;
  }

  template <class Rep, class Period>
  std::optional<T> pop_for(std::chrono::duration<Rep, Period> timeout) {
    std::unique_lock lock(mutex_);
    if (!cv_.wait_for(lock, timeout, [&] { return !items_.empty(); })) return std::nullopt;
    T v = std::move(items_.front());
    items_.pop_front();
    return v;
  }

 private:
  std::mutex mutex_;
  std::condition_variable cv_;
  std::deque<T> items_;
};

// Bridge frames: canonical JSON text {"topic", "stamp", "seq", "data"}.
std::string bridge_encode(const Envelope& envelope);
/// Throws MalformedFrame or UnknownTopic.
Envelope bridge_decode(std::string_view frame);
/// Roster topics carrying each labelled information flow (labels 1..7) of the
/// layered architecture. Empty for labels outside that range.
std::vector<Topic> topics_for_label(int label);

/// Topics a remote client may publish.
bool client_may_publish(Topic t);

}  // namespace c3a
