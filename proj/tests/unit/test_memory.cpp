#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "c3a/error.hpp"
#include "c3a/memory.hpp"

using namespace c3a;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "c3a_memory_tests";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  fs::remove(p);
  return p;
}

StateAction sa(double t, ControlMode m = ControlMode::Human) {
  return {t, m, {0.5, 0.1 * t, m, t}, {t, 2.0 * t, 0.0}};
}

ProceduralRecord rec(const StateAction& s) { return {ProceduralKey::StateAction, s.stamp, s}; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::ConfigInvalid;
}

}  // namespace

TEST_CASE("put then get returns the latest value") {
  MemoryStore m;
  CHECK_FALSE(m.contains(ProceduralKey::AgentPosition));
  m.put({ProceduralKey::AgentPosition, 1.0, Pose2D{1, 2, 0}});
  m.put({ProceduralKey::AgentPosition, 2.0, Pose2D{3, 4, 0}});
  m.put({ProceduralKey::AgentPosition, 2.0, Pose2D{5, 6, 0}});
  CHECK(std::get<Pose2D>(m.get(ProceduralKey::AgentPosition)) == Pose2D{5, 6, 0});

  std::array<bool, kQuestionCount> answers{};
  answers[0] = answers[1] = true;
  const CognitiveProfile prof = make_profile("s", answers);
  m.put({ProceduralKey::CognitiveScore, 0.0, prof});
  CHECK(std::get<CognitiveProfile>(m.get(ProceduralKey::CognitiveScore)) == prof);

  const GoalPose goal{{1.125, 2.125, 0.0}, {4, 8}, 0.5};
  m.put({ProceduralKey::Goal, 0.5, goal});
  CHECK(std::get<GoalPose>(m.get(ProceduralKey::Goal)) == goal);
}

TEST_CASE("stale stamps and absent keys are rejected") {
  MemoryStore m;
  CHECK(kind_of([&] { m.get(ProceduralKey::Goal); }) == ErrorKind::KeyAbsent);
  CHECK(kind_of([&] { m.get(ProceduralKey::StateAction); }) == ErrorKind::KeyAbsent);
  m.put({ProceduralKey::AgentPosition, 5.0, Pose2D{}});
  CHECK(kind_of([&] { m.put({ProceduralKey::AgentPosition, 4.0, Pose2D{1, 1, 1}}); }) == ErrorKind::StaleStamp);
  CHECK(std::get<Pose2D>(m.get(ProceduralKey::AgentPosition)) == Pose2D{});
  // Stamps are tracked per key.
  CHECK_NOTHROW(m.put({ProceduralKey::Goal, 1.0, GoalPose{}}));
  CHECK_THROWS_AS(m.put({ProceduralKey::Goal, 2.0, Pose2D{}}), std::invalid_argument);
}

TEST_CASE("state-action log keeps every record in order") {
  MemoryStore m;
  for (int k = 0; k < 40; ++k) m.put(rec(sa(0.05 * k)));
  const auto log = std::get<std::vector<StateAction>>(m.get(ProceduralKey::StateAction));
  REQUIRE(log.size() == 40);
  for (std::size_t k = 1; k < log.size(); ++k) CHECK(log[k - 1].stamp <= log[k].stamp);
  CHECK(log == m.state_actions());
}

TEST_CASE("episodes copy the state-actions inside their interval") {
  MemoryStore m;
  for (int k = 0; k < 10; ++k) m.put(rec(sa(k, k < 5 ? ControlMode::Human : ControlMode::Machine)));
  const EpisodeOutcome a = m.record_episode(EpisodeKind::Takeover, 5.0, 8.0);
  CHECK(a.event.event_id == 1);
  CHECK_FALSE(a.empty_interval);
  REQUIRE(a.event.trace.size() == 4);
  CHECK(a.event.trace.front() == sa(5, ControlMode::Machine));
  CHECK(a.event.trace.back() == sa(8, ControlMode::Machine));

  const EpisodeOutcome b = m.record_episode(EpisodeKind::Reclaim, 20.0, 25.0);
  CHECK(b.event.event_id == 2);
  CHECK(b.empty_interval);
  CHECK(b.event.trace.empty());

  CHECK_THROWS_AS(m.record_episode(EpisodeKind::Reclaim, 3.0, 2.0), std::invalid_argument);

  m.record_episode(EpisodeKind::Takeover, 0.0, 0.0);
  const auto takeovers = m.recall(EpisodeKind::Takeover);
  REQUIRE(takeovers.size() == 2);
  CHECK(takeovers[0].event_id == 1);
  CHECK(takeovers[1].event_id == 3);
  CHECK(m.recall(EpisodeKind::GoalReached).empty());
}

TEST_CASE("replaying the log reproduces the store") {
  const fs::path p = scratch("replay.jsonl");
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  {
    MemoryStore m(p);
    m.put({ProceduralKey::Goal, 0.0, GoalPose{{1.0, 2.0, 0.0}, {3, 7}, 0.0}});
    double t = 0.0;
    for (int k = 0; k < 200; ++k, t += 0.05) {
      m.put(rec({t, k % 3 ? ControlMode::Human : ControlMode::Machine, {u(rng), u(rng), ControlMode::Human, t},
                 {u(rng), u(rng), u(rng)}}));
      m.put({ProceduralKey::AgentPosition, t, Pose2D{u(rng), u(rng), 0.0}});
      if (k % 50 == 49) m.record_episode(k % 100 == 49 ? EpisodeKind::Takeover : EpisodeKind::Reclaim, t - 1.0, t);
    }
  }
  MemoryStore a(p), b(p);
  CHECK(a.state_actions().size() == 200);
  CHECK(a.state_actions() == b.state_actions());
  CHECK(a.episodes() == b.episodes());
  CHECK(a.episodes().size() == 4);
  CHECK(std::get<Pose2D>(a.get(ProceduralKey::AgentPosition)) == std::get<Pose2D>(b.get(ProceduralKey::AgentPosition)));
  CHECK(std::get<GoalPose>(a.get(ProceduralKey::Goal)).cell == CellIndex{3, 7});
}

TEST_CASE("the log is append-only") {
  const fs::path p = scratch("append.jsonl");
  std::string before;
  {
    MemoryStore m(p);
    m.put(rec(sa(1.0)));
    m.record_episode(EpisodeKind::GoalSet, 0.0, 1.0);
  }
  before = slurp(p);
  {
    MemoryStore m(p);
    CHECK(m.state_actions().size() == 1);
    m.put(rec(sa(2.0)));
    const EpisodeOutcome e = m.record_episode(EpisodeKind::GoalReached, 0.0, 2.0);
    CHECK(e.event.event_id == 2);
    CHECK(e.event.trace.size() == 2);
  }
  const std::string after = slurp(p);
  CHECK(after.size() > before.size());
  CHECK(after.compare(0, before.size(), before) == 0);
  // One header line, then one line per record.
  CHECK(std::count(after.begin(), after.end(), '\n') == 5);
}

TEST_CASE("corrupt logs are refused") {
  const fs::path p = scratch("corrupt.jsonl");
  {
    std::ofstream out(p);
    out << "{\"format\":\"nope\",\"version\":1}\n";
  }
  CHECK(kind_of([&] { MemoryStore m(p); }) == ErrorKind::IoFailure);
  {
    std::ofstream out(p);
    out << "not json\n";
  }
  CHECK(kind_of([&] { MemoryStore m(p); }) == ErrorKind::IoFailure);
}
