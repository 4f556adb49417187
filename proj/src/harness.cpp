#include "c3a/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "c3a/error.hpp"
#include "c3a/text.hpp"

namespace c3a {

namespace {

constexpr double kOffRouteDistance = 0.5;
constexpr double kGoalSearchRadius = 2.0;
// Subjects steer at the next route cell or so rather than cutting corners.
constexpr double kDriverLookahead = 0.35;

const std::string* find_key(const std::vector<std::pair<std::string, std::string>>& kv, std::string_view key) {
  for (const auto& [k, v] : kv) {
    if (k == key) return &v;
  }
  return nullptr;
}

double number_or(const std::vector<std::pair<std::string, std::string>>& kv, std::string_view key, double fallback) {
  const std::string* v = find_key(kv, key);
  if (!v) return fallback;
  const auto d = text::parse_double(*v);
  if (!d) throw Error(ErrorKind::ConfigInvalid, "key '" + std::string(key) + "' is not a number: " + *v);
  return *d;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoFailure, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split_list(std::string_view list) {
  std::vector<std::string> out;
  while (!list.empty()) {
    const auto comma = list.find(',');
    const std::string_view item = text::trim(list.substr(0, comma));
    if (!item.empty()) out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    list.remove_prefix(comma + 1);
  }
  return out;
}

bool in_unit(double p) { return p >= 0.0 && p <= 1.0; }

// Index of the waypoint nearest `pose`.
std::size_t nearest_waypoint(const GlobalPlan& plan, const Pose2D& pose) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < plan.waypoints.size(); ++k) {
    const double d = std::hypot(plan.waypoints[k].x - pose.x, plan.waypoints[k].y - pose.y);
    if (d < best_d) {
      best_d = d;
      best = k;
    }
  }
  return best;
}

std::optional<GlobalPlan> plan_route(const Costmap& cm, const Pose2D& from, CellIndex goal) {
  const auto start = nearest_passable(cm, cm.geometry.world_to_cell(from.x, from.y), 3);
  if (!start) return std::nullopt;
  try {
    return plan_global_weighted(cm, *start, goal).plan;
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace

std::string_view to_string(RunMode m) {
  switch (m) {
    case RunMode::Human:
      return "human";
    case RunMode::Machine:
      return "machine";
    case RunMode::Collaborative:
      break;
  }
  return "collab";
}

RunMode run_mode_from_string(std::string_view s) {
  const std::string l = text::to_lower(text::trim(s));
  if (l == "human") return RunMode::Human;
  if (l == "machine") return RunMode::Machine;
  if (l == "collab" || l == "collaborative") return RunMode::Collaborative;
  throw Error(ErrorKind::ConfigInvalid, "unknown run mode '" + std::string(s) + "'");
}

// ---------------------------------------------------------------------------
// Subjects and the scripted driver

void validate(const ScriptedDriver& d) {
  if (!in_unit(d.attentiveness)) throw Error(ErrorKind::ConfigInvalid, "attentiveness must lie in [0,1]");
  if (!in_unit(d.pause_prob)) throw Error(ErrorKind::ConfigInvalid, "pause_prob must lie in [0,1]");
  if (!in_unit(d.wrong_turn_prob)) throw Error(ErrorKind::ConfigInvalid, "wrong_turn_prob must lie in [0,1]");
  if (!(d.heading_noise_sigma >= 0.0)) throw Error(ErrorKind::ConfigInvalid, "heading_noise_sigma must be >= 0");
  if (!(d.pause_min >= 0.0 && d.pause_min <= d.pause_max)) {
    throw Error(ErrorKind::ConfigInvalid, "pause duration range must satisfy 0 <= min <= max");
  }
  if (!(d.wrong_turn_min >= 0.0 && d.wrong_turn_min <= d.wrong_turn_max)) {
    throw Error(ErrorKind::ConfigInvalid, "wrong-turn duration range must satisfy 0 <= min <= max");
  }
}

SubjectProfile parse_subject(std::string_view body) {
  SubjectProfile s;
  s.profile = parse_cognitive_profile(body);
  const auto kv = parse_key_values(body);
  ScriptedDriver& d = s.driver;
  d.attentiveness = number_or(kv, "attentiveness", d.attentiveness);
  d.heading_noise_sigma = number_or(kv, "heading_noise_sigma", d.heading_noise_sigma);
  d.pause_prob = number_or(kv, "pause_prob", d.pause_prob);
  d.pause_min = number_or(kv, "pause_min", d.pause_min);
  d.pause_max = number_or(kv, "pause_max", d.pause_max);
  d.wrong_turn_prob = number_or(kv, "wrong_turn_prob", d.wrong_turn_prob);
  d.wrong_turn_min = number_or(kv, "wrong_turn_min", d.wrong_turn_min);
  d.wrong_turn_max = number_or(kv, "wrong_turn_max", d.wrong_turn_max);
  if (const std::string* seed = find_key(kv, "rng_seed")) {
    const auto v = text::parse_int(*seed);
    if (!v || *v < 0) throw Error(ErrorKind::ConfigInvalid, "rng_seed must be a non-negative integer");
    d.rng_seed = static_cast<std::uint64_t>(*v);
  }
  validate(d);
  return s;
}

SubjectProfile load_subject_file(const std::filesystem::path& path) { return parse_subject(read_file(path)); }

std::string serialize(const SubjectProfile& subject) {
  const ScriptedDriver& d = subject.driver;
  std::ostringstream out;
  out << serialize(subject.profile) << "attentiveness=" << text::format_double(d.attentiveness) << '\n'
      << "heading_noise_sigma=" << text::format_double(d.heading_noise_sigma) << '\n'
      << "pause_prob=" << text::format_double(d.pause_prob) << '\n'
      << "pause_min=" << text::format_double(d.pause_min) << '\n'
      << "pause_max=" << text::format_double(d.pause_max) << '\n'
      << "wrong_turn_prob=" << text::format_double(d.wrong_turn_prob) << '\n'
      << "wrong_turn_min=" << text::format_double(d.wrong_turn_min) << '\n'
      << "wrong_turn_max=" << text::format_double(d.wrong_turn_max) << '\n'
      << "rng_seed=" << d.rng_seed << '\n';
  return out.str();
}

DriverModel::DriverModel(ScriptedDriver driver, std::uint64_t trial_seed, NavigatorParams params)
    : driver_(driver), params_(params) {
  validate(driver_);
  std::seed_seq seq{static_cast<std::uint32_t>(driver_.rng_seed), static_cast<std::uint32_t>(driver_.rng_seed >> 32),
                    static_cast<std::uint32_t>(trial_seed), static_cast<std::uint32_t>(trial_seed >> 32)};
  rng_.seed(seq);
}

double DriverModel::uniform(double lo, double hi) {
  if (hi <= lo) return lo;
  return std::uniform_real_distribution<double>(lo, hi)(rng_);
}

std::optional<VelocityCommand> DriverModel::step(const Pose2D& pose, const GlobalPlan* plan, double now, double dt) {
  (void)dt;
  if (plan == nullptr || plan->waypoints.empty()) throw Error(ErrorKind::NoPlan, "scripted driver has no route");
  if (pausing(now)) return std::nullopt;

  const double lapse = 1.0 - driver_.attentiveness;
  if (!wrong_turn(now)) {
    if (std::bernoulli_distribution(driver_.pause_prob * lapse)(rng_)) {
      pause_until_ = now + uniform(driver_.pause_min, driver_.pause_max);
      return std::nullopt;
    }
    if (std::bernoulli_distribution(driver_.wrong_turn_prob * lapse)(rng_)) {
      wrong_turn_until_ = now + uniform(driver_.wrong_turn_min, driver_.wrong_turn_max);
    }
  }

  Pose2D target;
  if (wrong_turn(now)) {
    // Head back the way the route came.
    const std::size_t k = nearest_waypoint(*plan, pose);
    GlobalPlan back;
    back.waypoints.assign(plan->waypoints.rbegin() + static_cast<std::ptrdiff_t>(plan->waypoints.size() - 1 - k),
                          plan->waypoints.rend());
    target = lookahead_point(back, pose, params_.lookahead);
  } else {
    target = lookahead_point(*plan, pose, params_.lookahead);
  }

  if (driver_.heading_noise_sigma > 0.0) {
    const double noise = std::normal_distribution<double>(0.0, driver_.heading_noise_sigma)(rng_);
    const double dx = target.x - pose.x;
    const double dy = target.y - pose.y;
    const double c = std::cos(noise);
    const double s = std::sin(noise);
    target.x = pose.x + c * dx - s * dy;
    target.y = pose.y + s * dx + c * dy;
  }

  VelocityCommand cmd = pursue(pose, target, params_.heading_gain, params_.limits);
  cmd.source = ControlMode::Human;
  cmd.stamp = now;
  return cmd;
}

std::optional<VelocityCommand> scripted_driver_step(DriverModel& driver, const Pose2D& pose_estimate,
                                                    const GlobalPlan* plan, double now, double dt) {
  return driver.step(pose_estimate, plan, now, dt);
}

CellIndex default_goal_cell(const GridWorld& world) {
  const GridGeometry& g = world.geometry;
  const CellIndex s = g.world_to_cell(world.start_pose.x, world.start_pose.y);
  const double cx = s.i < g.width / 2 ? g.origin.x + g.width * g.resolution : g.origin.x;
  const double cy = s.j < g.height / 2 ? g.origin.y + g.height * g.resolution : g.origin.y;

  std::vector<bool> walls(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) walls[k] = world.cells[k] == WorldCell::Wall;
  const std::vector<double> clearance = distance_transform(g, walls);

  std::optional<CellIndex> best;
  double best_clear = 0.0;
  double best_corner = 0.0;
  for (int j = 0; j < g.height; ++j) {
    for (int i = 0; i < g.width; ++i) {
      const CellIndex c{i, j};
      if (walls[g.index(c)]) continue;
      const Pose2D p = g.cell_center(c);
      const double corner = std::hypot(p.x - cx, p.y - cy);
      if (corner > kGoalSearchRadius) continue;
      const double clear = clearance[g.index(c)];
      if (!best || clear > best_clear + 1e-9 || (std::abs(clear - best_clear) <= 1e-9 && corner < best_corner)) {
        best = c;
        best_clear = clear;
        best_corner = corner;
      }
    }
  }
  if (!best) throw Error(ErrorKind::ConfigInvalid, "no free cell near the far corner of the maze");
  return *best;
}

// ---------------------------------------------------------------------------
// Session

MuxConfig mux_config_for(RunMode mode, const CognitiveProfile& profile) {
  MuxConfig cfg;
  cfg.priority = make_priority_config(profile);
  cfg.initial_mode = mode == RunMode::Machine ? ControlMode::Machine : ControlMode::Human;
  cfg.machine_enabled = mode != RunMode::Human;
  return cfg;
}

Session::Session(GridWorld world, SessionConfig config)
    : world_(std::move(world)),
      config_(std::move(config)),
      mux_(mux_config_for(config_.mode, config_.profile)),
      clock_(config_.dt),
      pose_(world_.start_pose),
      particles_(config_.seed),
      navigator_(config_.navigator),
      trend_(mux_.priority, config_.trend_sample_period) {
  memory_ = config_.memory_log ? std::make_unique<MemoryStore>(*config_.memory_log) : std::make_unique<MemoryStore>();
  recorder_ = std::make_unique<MemoryRecorder>(bus_, *memory_);

  grid_.geometry = world_.geometry;
  grid_.logodds.assign(world_.geometry.size(), 0.0);
  map_ = classify(grid_, config_.mapping);
  scatter_around(particles_, world_.start_pose, map_, config_.mcl);
  estimate_ = estimate_pose(particles_, 0.0);
  arb_ = initial_state(mux_, 0.0);

  bus_.publish(Topic::CognitiveScore, 0.0, config_.profile);
  bus_.publish(Topic::Mode, 0.0, ModeAnnouncement{arb_.mode, ModeCause::Init, 0.0});
  if (config_.goal) set_goal(*config_.goal);
}

Session::~Session() = default;

void Session::set_goal(CellIndex cell) {
  if (!world_.geometry.contains(cell) || world_.cells[world_.geometry.index(cell)] == WorldCell::Wall) {
    throw Error(ErrorKind::ConfigInvalid, "goal cell (" + std::to_string(cell.i) + "," + std::to_string(cell.j) +
                                              ") is not a free cell");
  }
  goal_ = make_goal(world_.geometry, cell, now());
  goal_reached_ = false;
  trend_ = TrendMonitor(mux_.priority, config_.trend_sample_period);
  bus_.publish(Topic::Goal, now(), *goal_);
}

void Session::publish_map(bool force) {
  if (!force && (!map_dirty_ || now() - last_map_publish_ < 0.5 - 1e-9)) return;
  bus_.publish(Topic::Map, now(), map_);
  last_map_publish_ = now();
  map_dirty_ = false;
}

void Session::tick(const HumanSource& human) {
  const double t = now();
  const double dt = clock_.dt();

  // 1. sense
  const LaserScan scan = cast_scan(world_, pose_, config_.scan, t);
  bus_.publish(Topic::Scan, t, scan);
  bus_.publish(Topic::PoseTruth, t, pose_);

  // 2. map at the true pose
  integrate_scan(grid_, pose_, scan, config_.mapping);
  TernaryGrid next = classify(grid_, config_.mapping);
  if (next.cells != map_.cells) {
    map_ = std::move(next);
    map_dirty_ = true;
  }
  if (clock_.tick_count() % config_.field_rebuild_ticks == 0) {
    field_ = LikelihoodField(map_, config_.mcl.max_field_distance);
  }
  publish_map(clock_.tick_count() == 0);

  // 3. localize
  mcl_step(particles_, odom_, scan, field_, config_.mcl);
  estimate_ = estimate_pose(particles_, t);
  bus_.publish(Topic::PoseEstimate, t, estimate_);

  // 4. trend
  if (goal_ && trend_.due(t)) {
    const auto& plan = navigator_.state().active_plan;
    const DistanceSample sample = sample_distance(estimate_.mean, goal_, plan ? &*plan : nullptr, t);
    const TrendLabel label = trend_.add(sample);
    trace_.push_back(sample);
    bus_.publish(Topic::MetricDistance, t, sample);
    bus_.publish(Topic::MetricTrend, t, TrendSignal{label, t});
  }

  // 5. navigate
  VelocityCommand machine_cmd{0.0, 0.0, ControlMode::Machine, t};
  if (goal_ && !goal_reached_) machine_cmd = navigator_.update(t, map_, estimate_.mean, scan, goal_->pose);
  bus_.publish(Topic::CmdVelMachine, t, machine_cmd);

  // 6. human input
  std::optional<VelocityCommand> human_cmd = human ? human(*this) : std::nullopt;
  if (human_cmd) {
    *human_cmd = clamp_command(*human_cmd, config_.navigator.limits);
    human_cmd->source = ControlMode::Human;
    human_cmd->stamp = t;
    bus_.publish(Topic::CmdVelHuman, t, *human_cmd);
  }

  // 7. arbitrate
  const MuxStep step = mux_step(arb_, human_cmd, machine_cmd, trend_.trend(), mux_, t);
  arb_ = step.state;
  const VelocityCommand cmd = clamp_command(step.command, config_.navigator.limits);
  bus_.publish(Topic::CmdVel, t, cmd);
  if (step.announcement) bus_.publish(Topic::Mode, t, *step.announcement);

  // 8. move
  const Pose2D next_pose = advance(world_, pose_, cmd, dt);
  path_length_ += std::hypot(next_pose.x - pose_.x, next_pose.y - pose_.y);
  odom_ = relative_motion(pose_, next_pose);
  pose_ = next_pose;
  clock_.tick();

  // 9. memory
  if (t - last_state_action_ >= config_.state_action_period - 1e-9) {
    bus_.publish(Topic::StateAction, t, StateAction{t, arb_.mode, cmd, estimate_.mean});
    last_state_action_ = t;
  }

  // 10. goal, judged on the localized pose as the navigator sees it
  if (goal_ && !goal_reached_ && distance(estimate_.mean, goal_->pose) <= config_.navigator.goal_tolerance) {
    goal_reached_ = true;
    finish();
  }
}

void Session::finish() {
  if (finished_) return;
  recorder_->finish(now(), goal_reached_);
  finished_ = true;
}

// ---------------------------------------------------------------------------
// Trials and suites

RunResult run_trial(const GridWorld& world, const RunConfig& config) {
  if (!(config.time_limit > 0.0)) throw Error(ErrorKind::ConfigInvalid, "time_limit must be positive");
  validate(config.subject.driver);
  const CellIndex goal = config.goal ? *config.goal : default_goal_cell(world);

  NavigatorParams nav;
  const Costmap truth = build_costmap(ternary_from_world(world), nav.costmap);
  if (!truth.geometry.contains(goal) || truth.lethal(goal)) {
    throw Error(ErrorKind::ConfigInvalid, "goal cell is not reachable by the robot");
  }
  std::optional<GlobalPlan> route = plan_route(truth, world.start_pose, goal);
  if (!route) throw Error(ErrorKind::ConfigInvalid, "goal is not reachable from the start");

  SessionConfig sc;
  sc.mode = config.mode;
  sc.profile = config.subject.profile;
  sc.goal = goal;
  sc.seed = config.seed;
  sc.navigator = nav;
  sc.memory_log = config.memory_log;
  Session session(world, sc);

  NavigatorParams driver_params = nav;
  driver_params.lookahead = kDriverLookahead;
  DriverModel driver(config.subject.driver, config.seed, driver_params);
  bool was_wrong_turn = false;
  Session::HumanSource human;
  if (config.mode != RunMode::Machine) {
    human = [&](const Session& s) -> std::optional<VelocityCommand> {
      const Pose2D& pose = s.estimate().mean;
      const bool wrong = driver.wrong_turn(s.now());
      bool stale = !route || (was_wrong_turn && !wrong);
      if (!stale) {
        const auto& w = route->waypoints[nearest_waypoint(*route, pose)];
        stale = std::hypot(w.x - pose.x, w.y - pose.y) > kOffRouteDistance;
      }
      if (stale && !wrong) {
        if (auto fresh = plan_route(truth, pose, goal)) route = std::move(fresh);
      }
      was_wrong_turn = wrong;
      return driver.step(pose, route ? &*route : nullptr, s.now(), s.config().dt);
    };
  }

  const auto max_ticks = static_cast<std::int64_t>(std::llround(config.time_limit / sc.dt));
  while (!session.goal_reached() && session.tick_count() < max_ticks) session.tick(human);
  session.finish();

  RunResult r;
  if (session.goal_reached()) r.manoeuvring_time = static_cast<double>(session.tick_count()) * sc.dt;
  r.takeover_count = session.arbitration().takeover_count;
  r.reclaim_count = session.arbitration().reclaim_count;
  r.path_length = session.path_length();
  r.distance_trace = session.distance_trace();
  return r;
}

RunResult run_trial(const RunConfig& config) { return run_trial(load_maze_file(config.maze.string()), config); }

SuiteConfig parse_suite_config(std::string_view body, const std::filesystem::path& base_dir) {
  const auto kv = parse_key_values(body);
  auto require = [&](std::string_view key) -> const std::string& {
    const std::string* v = find_key(kv, key);
    if (!v || v->empty()) throw Error(ErrorKind::ConfigInvalid, "suite config is missing '" + std::string(key) + "'");
    return *v;
  };
  auto resolve = [&](const std::string& p) {
    const std::filesystem::path path(p);
    return path.is_absolute() || base_dir.empty() ? path : base_dir / path;
  };

  SuiteConfig cfg;
  cfg.maze = resolve(require("maze"));
  for (const auto& s : split_list(require("subjects"))) cfg.subjects.push_back(resolve(s));
  for (const auto& m : split_list(require("modes"))) cfg.modes.push_back(run_mode_from_string(m));
  for (const auto& item : split_list(require("seeds"))) {
    const auto dash = item.find('-', 1);
    const auto lo = text::parse_int(item.substr(0, dash));
    const auto hi = dash == std::string::npos ? lo : text::parse_int(item.substr(dash + 1));
    if (!lo || !hi || *lo < 0 || *hi < *lo) throw Error(ErrorKind::ConfigInvalid, "bad seed entry '" + item + "'");
    for (long long s = *lo; s <= *hi; ++s) cfg.seeds.push_back(static_cast<std::uint64_t>(s));
  }
  if (const std::string* out = find_key(kv, "out")) cfg.out = resolve(*out);
  cfg.time_limit = number_or(kv, "time_limit", cfg.time_limit);
  if (!(cfg.time_limit > 0.0)) throw Error(ErrorKind::ConfigInvalid, "time_limit must be positive");
  if (cfg.subjects.empty() || cfg.modes.empty() || cfg.seeds.empty()) {
    throw Error(ErrorKind::ConfigInvalid, "suite needs at least one subject, mode and seed");
  }
  return cfg;
}

SuiteConfig load_suite_config(const std::filesystem::path& path) {
  return parse_suite_config(read_file(path), path.parent_path());
}

std::vector<SuiteRow> run_suite(const GridWorld& world, const std::vector<SubjectProfile>& subjects,
                                const std::vector<RunMode>& modes, const std::vector<std::uint64_t>& seeds,
                                double time_limit) {
  if (subjects.empty() || modes.empty() || seeds.empty()) {
    throw Error(ErrorKind::ConfigInvalid, "run_suite needs non-empty subject, mode and seed lists");
  }
  std::vector<SuiteRow> rows;
  rows.reserve(subjects.size() * modes.size() * seeds.size());
  for (const auto& subject : subjects) {
    for (RunMode mode : modes) {
      for (std::uint64_t seed : seeds) {
        SuiteRow row;
        row.subject_id = subject.profile.subject_id;
        row.score = subject.profile.score;
        row.group = subject.profile.group;
        row.mode = mode;
        row.seed = seed;
        RunConfig rc;
        rc.mode = mode;
        rc.subject = subject;
        rc.seed = seed;
        rc.time_limit = time_limit;
        try {
          row.result = run_trial(world, rc);
        } catch (const std::exception& e) {
          row.error = e.what();
        }
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

double median(std::vector<double> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

std::string suite_csv(const std::vector<SuiteRow>& rows, double time_limit, bool medians) {
  std::ostringstream out;
  out << "subject_id,score,group,mode,seed,manoeuvring_time_s,timeout,takeover_count,reclaim_count,path_length_m\n";
  std::size_t k = 0;
  while (k < rows.size()) {
    std::size_t end = k;
    while (end < rows.size() && rows[end].subject_id == rows[k].subject_id && rows[end].mode == rows[k].mode) ++end;

    std::vector<double> times, takeovers, reclaims, paths;
    int timeouts = 0;
    for (std::size_t r = k; r < end; ++r) {
      const SuiteRow& row = rows[r];
      out << row.subject_id << ',' << row.score << ',' << to_string(row.group) << ',' << to_string(row.mode) << ','
          << row.seed << ',';
      if (row.error) {
        out << "ERROR,0,0,0,0\n";
        continue;
      }
      const RunResult& res = row.result;
      if (res.manoeuvring_time) {
        out << text::format_fixed(*res.manoeuvring_time, 2) << ",0,";
      } else {
        out << "TIMEOUT,1,";
        ++timeouts;
      }
      out << res.takeover_count << ',' << res.reclaim_count << ',' << text::format_fixed(res.path_length, 3) << '\n';
      times.push_back(res.manoeuvring_time.value_or(time_limit));
      takeovers.push_back(res.takeover_count);
      reclaims.push_back(res.reclaim_count);
      paths.push_back(res.path_length);
    }

    const SuiteRow& head = rows[k];
    if (!medians) {
      k = end;
      continue;
    }
    out << head.subject_id << ',' << head.score << ',' << to_string(head.group) << ',' << to_string(head.mode)
        << ",median,";
    if (times.empty()) {
      out << "ERROR,0,0,0,0\n";
    } else {
      out << text::format_fixed(median(times), 3) << ',' << timeouts << ',' << text::format_double(median(takeovers))
          << ',' << text::format_double(median(reclaims)) << ',' << text::format_fixed(median(paths), 3) << '\n';
    }
    k = end;
  }
  return out.str();
}

}  // namespace c3a
