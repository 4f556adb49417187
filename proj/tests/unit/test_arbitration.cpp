#include <doctest.h>

#include <random>

#include "c3a/arbitration.hpp"
#include "oracles.hpp"

using namespace c3a;

namespace {

MuxConfig config_for(CognitiveGroup g, bool machine = true) {
  MuxConfig cfg;
  cfg.priority = make_priority_config(g);
  cfg.machine_enabled = machine;
  return cfg;
}

const VelocityCommand kMachine{0.9, 0.3, ControlMode::Machine, 0.0};

}  // namespace

TEST_CASE("the normative table is complete and mux_step agrees with every row") {
  const auto rows = oracle::load_fsm_table();
  REQUIRE(rows.size() == 48);
  std::set<std::tuple<int, int, bool, bool, int>> keys;
  for (const auto& r : rows) {
    keys.insert({int(r.group), int(r.mode), r.human_cmd, r.paused, int(r.trend)});
  }
  CHECK(keys.size() == 48);
  CHECK(oracle::fsm_mismatches(rows) == 0);
}

TEST_CASE("the table oracle notices a broken row") {
  auto rows = oracle::load_fsm_table();
  rows[5].next_mode = rows[5].next_mode == ControlMode::Human ? ControlMode::Machine : ControlMode::Human;
  CHECK(oracle::fsm_mismatches(rows) == 1);
}

TEST_CASE("takeover needs a long enough pause and a qualifying trend") {
  const MuxConfig lcs = config_for(CognitiveGroup::LCS);
  ArbitrationState s = initial_state(lcs, 0.0);
  // 0.35 s of silence is not yet a pause for LCS.
  auto out = mux_step(s, std::nullopt, kMachine, TrendLabel::Worsening, lcs, 0.35);
  CHECK(out.state.mode == ControlMode::Human);
  CHECK(out.command.linear == 0.0);
  out = mux_step(s, std::nullopt, kMachine, TrendLabel::Neutral, lcs, 0.4);
  CHECK(out.state.mode == ControlMode::Machine);
  CHECK(out.state.takeover_count == 1);
  REQUIRE(out.announcement);
  CHECK(out.announcement->cause == ModeCause::Takeover);
  CHECK(out.command.linear == 0.9);

  const MuxConfig hcs = config_for(CognitiveGroup::HCS);
  s = initial_state(hcs, 0.0);
  CHECK(mux_step(s, std::nullopt, kMachine, TrendLabel::Neutral, hcs, 5.0).state.mode == ControlMode::Human);
  CHECK(mux_step(s, std::nullopt, kMachine, TrendLabel::Worsening, hcs, 0.7).state.mode == ControlMode::Human);
  CHECK(mux_step(s, std::nullopt, kMachine, TrendLabel::Worsening, hcs, 0.8).state.mode == ControlMode::Machine);
  CHECK(mux_step(s, std::nullopt, kMachine, TrendLabel::Improving, hcs, 9.0).state.mode == ControlMode::Human);
}

TEST_CASE("a human command always reclaims and passes through unchanged") {
  const MuxConfig cfg = config_for(CognitiveGroup::LCS);
  ArbitrationState s = initial_state(cfg, 0.0);
  s.mode = ControlMode::Machine;
  const VelocityCommand human{-0.3, 1.1, ControlMode::Machine, 123.0};
  const auto out = mux_step(s, human, kMachine, TrendLabel::Worsening, cfg, 4.0);
  CHECK(out.state.mode == ControlMode::Human);
  CHECK(out.state.reclaim_count == 1);
  CHECK(out.state.last_human_cmd_stamp == 4.0);
  CHECK(out.command.linear == -0.3);
  CHECK(out.command.angular == 1.1);
  CHECK(out.command.source == ControlMode::Human);
  CHECK(out.command.stamp == 4.0);
  REQUIRE(out.announcement);
  CHECK(out.announcement->cause == ModeCause::Reclaim);
}

TEST_CASE("reclaim safety over random input sequences") {
  std::mt19937_64 rng(404);
  std::bernoulli_distribution present(0.4);
  std::uniform_int_distribution<int> trend(0, 2), group(0, 1);
  std::uniform_real_distribution<double> vel(-1.0, 1.0);
  const TrendLabel labels[] = {TrendLabel::Improving, TrendLabel::Neutral, TrendLabel::Worsening};
  int violations = 0;
  for (int seq = 0; seq < 10000; ++seq) {
    const MuxConfig cfg = config_for(group(rng) ? CognitiveGroup::HCS : CognitiveGroup::LCS);
    ArbitrationState s = initial_state(cfg, 0.0);
    double t = 0.0;
    for (int k = 0; k < 30; ++k) {
      t += 0.05 * (1 + k % 4);
      std::optional<VelocityCommand> h;
      if (present(rng)) h = VelocityCommand{vel(rng), vel(rng), ControlMode::Human, t};
      const VelocityCommand m{vel(rng), vel(rng), ControlMode::Machine, t};
      const auto prev = s;
      const auto out = mux_step(s, h, m, labels[trend(rng)], cfg, t);
      bool ok = true;
      if (h) {
        ok = out.state.mode == ControlMode::Human && out.command.linear == h->linear &&
             out.command.angular == h->angular && out.command.source == ControlMode::Human;
      }
      // Counters only grow, by at most one, and only alongside an announcement.
      const int dt = out.state.takeover_count - prev.takeover_count;
      const int dr = out.state.reclaim_count - prev.reclaim_count;
      ok = ok && dt >= 0 && dr >= 0 && dt + dr <= 1 && (dt + dr == 1) == out.announcement.has_value();
      ok = ok && (out.state.mode != prev.mode) == out.announcement.has_value();
      // The machine stream reaches the output only in MACHINE mode.
      if (out.command.source == ControlMode::Machine) ok = ok && out.state.mode == ControlMode::Machine;
      if (!ok) ++violations;
      s = out.state;
    }
  }
  CHECK(violations == 0);
}

TEST_CASE("human standalone never emits the machine command") {
  std::mt19937_64 rng(5);
  std::bernoulli_distribution present(0.2);
  const TrendLabel labels[] = {TrendLabel::Improving, TrendLabel::Neutral, TrendLabel::Worsening};
  for (auto g : {CognitiveGroup::LCS, CognitiveGroup::HCS}) {
    const MuxConfig cfg = config_for(g, false);
    ArbitrationState s = initial_state(cfg, 0.0);
    CHECK(s.mode == ControlMode::Human);
    for (int k = 1; k <= 2000; ++k) {
      const double t = 0.05 * k;
      std::optional<VelocityCommand> h;
      if (present(rng)) h = VelocityCommand{0.2, 0.1, ControlMode::Human, t};
      const auto out = mux_step(s, h, kMachine, labels[k % 3], cfg, t);
      CHECK(out.state.mode == ControlMode::Human);
      CHECK(out.command.source == ControlMode::Human);
      CHECK_FALSE(out.announcement);
      if (!h) CHECK(out.command.linear == 0.0);
      s = out.state;
    }
    CHECK(s.takeover_count == 0);
  }
}

TEST_CASE("machine standalone passes the machine through while the human is silent") {
  MuxConfig cfg = config_for(CognitiveGroup::HCS);
  cfg.initial_mode = ControlMode::Machine;
  ArbitrationState s = initial_state(cfg, 0.0);
  CHECK(s.mode == ControlMode::Machine);
  for (int k = 1; k <= 500; ++k) {
    const VelocityCommand m{0.01 * k, -0.5, ControlMode::Machine, 0.0};
    const auto out = mux_step(s, std::nullopt, m, TrendLabel::Improving, cfg, 0.05 * k);
    CHECK(out.command.linear == m.linear);
    CHECK(out.command.source == ControlMode::Machine);
    CHECK_FALSE(out.announcement);
    s = out.state;
  }
  CHECK(s.takeover_count == 0);
  CHECK(s.reclaim_count == 0);
}
