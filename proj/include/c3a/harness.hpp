#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "c3a/arbitration.hpp"
#include "c3a/bus.hpp"
#include "c3a/cognitive.hpp"
#include "c3a/heuristic.hpp"
#include "c3a/memory.hpp"
#include "c3a/navigator.hpp"
#include "c3a/perception.hpp"
#include "c3a/recorder.hpp"
#include "c3a/world_sim.hpp"

namespace c3a {

enum class RunMode { Human, Machine, Collaborative };

std::string_view to_string(RunMode m);
/// Accepts human, machine, collab and collaborative.
RunMode run_mode_from_string(std::string_view s);

/// Parametric stand-in for a human subject.
struct ScriptedDriver {
  double attentiveness = 1.0;
  double heading_noise_sigma = 0.0;  // rad
  double pause_prob = 0.0;           // per tick
  double pause_min = 1.0;            // s
  double pause_max = 3.0;            // s
  double wrong_turn_prob = 0.0;      // per tick
  double wrong_turn_min = 2.0;       // s
  double wrong_turn_max = 5.0;       // s
  std::uint64_t rng_seed = 0;

  friend bool operator==(const ScriptedDriver&, const ScriptedDriver&) = default;
};

/// Throws ConfigInvalid when a probability leaves [0,1] or a range is inverted.
void validate(const ScriptedDriver& d);

struct SubjectProfile {
  CognitiveProfile profile;
  ScriptedDriver driver;
};

/// key=value subject file: the profile keys plus the driver fields.
SubjectProfile parse_subject(std::string_view body);
SubjectProfile load_subject_file(const std::filesystem::path& path);
std::string serialize(const SubjectProfile& subject);

/// Per-trial runtime of a ScriptedDriver: pause and wrong-turn timers plus its rng.
class DriverModel {
 public:
  DriverModel(ScriptedDriver driver, std::uint64_t trial_seed, NavigatorParams params = {});

  /// One tick of the driver. Returns nullopt while the driver is pausing.
  /// Throws NoPlan when `plan` is null or empty.
  std::optional<VelocityCommand> step(const Pose2D& pose, const GlobalPlan* plan, double now, double dt);

  bool pausing(double now) const { return now < pause_until_; }
  bool wrong_turn(double now) const { return now < wrong_turn_until_; }
  const ScriptedDriver& driver() const { return driver_; }

 private:
  double uniform(double lo, double hi);

  ScriptedDriver driver_;
  NavigatorParams params_;
  std::mt19937_64 rng_;
  double pause_until_ = -1.0;
  double wrong_turn_until_ = -1.0;
};

/// Free-function form of DriverModel::step.
std::optional<VelocityCommand> scripted_driver_step(DriverModel& driver, const Pose2D& pose_estimate,
                                                    const GlobalPlan* plan, double now, double dt);

/// Far-corner goal of a maze: the free cell nearest the corner diagonally
/// opposite the start.
CellIndex default_goal_cell(const GridWorld& world);

struct SessionConfig {
  RunMode mode = RunMode::Collaborative;
  CognitiveProfile profile;
  std::optional<CellIndex> goal;  // nullopt: no goal until one is set
  std::uint64_t seed = 1;
  double dt = 0.05;
  ScanParams scan{};
  MappingParams mapping{};
  MclParams mcl{};
  NavigatorParams navigator{};
  int field_rebuild_ticks = 5;
  double trend_sample_period = 0.5;
  double state_action_period = 0.5;
  std::optional<std::filesystem::path> memory_log;
};

MuxConfig mux_config_for(RunMode mode, const CognitiveProfile& profile);

/// One deterministic collaborative-control loop: world, perception, navigator,
/// trend monitor, mux and memory wired over a bus. Each tick runs scan, map,
/// localize, trend, navigate, human input, mux, motion, memory, goal check.
class Session {
 public:
  /// Supplies the human command for the current tick, or nullopt for silence.
  using HumanSource = std::function<std::optional<VelocityCommand>(const Session&)>;

  Session(GridWorld world, SessionConfig config);
  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;
  ~Session();

  void tick(const HumanSource& human);

  /// Sets or replaces the shared goal. Throws ConfigInvalid for a wall or
  /// off-map cell.
  void set_goal(CellIndex cell);

  Bus& bus() { return bus_; }
  const GridWorld& world() const { return world_; }
  const SessionConfig& config() const { return config_; }
  double now() const { return clock_.now(); }
  std::int64_t tick_count() const { return clock_.tick_count(); }
  const Pose2D& true_pose() const { return pose_; }
  const PoseEstimate& estimate() const { return estimate_; }
  const TernaryGrid& map() const { return map_; }
  const std::optional<GoalPose>& goal() const { return goal_; }
  const Navigator& navigator() const { return navigator_; }
  const ArbitrationState& arbitration() const { return arb_; }
  const TrendMonitor& trend() const { return trend_; }
  const std::vector<DistanceSample>& distance_trace() const { return trace_; }
  const MemoryStore& memory() const { return *memory_; }
  double path_length() const { return path_length_; }
  bool goal_reached() const { return goal_reached_; }
  /// Closes open memory segments. Called automatically on goal arrival.
  void finish();

 private:
  void publish_map(bool force);

  GridWorld world_;
  SessionConfig config_;
  MuxConfig mux_;
  SimClock clock_;
  Bus bus_;
  std::unique_ptr<MemoryStore> memory_;
  std::unique_ptr<MemoryRecorder> recorder_;
  Pose2D pose_;
  Pose2D odom_;
  OccupancyGridMap grid_;
  TernaryGrid map_;
  LikelihoodField field_;
  ParticleSet particles_;
  PoseEstimate estimate_;
  Navigator navigator_;
  TrendMonitor trend_;
  ArbitrationState arb_;
  std::optional<GoalPose> goal_;
  std::vector<DistanceSample> trace_;
  double path_length_ = 0.0;
  double last_state_action_ = -1e9;
  double last_map_publish_ = -1e9;
  bool map_dirty_ = true;
  bool goal_reached_ = false;
  bool finished_ = false;
};

struct RunConfig {
  RunMode mode = RunMode::Collaborative;
  std::filesystem::path maze;
  SubjectProfile subject;
  std::optional<CellIndex> goal;  // nullopt: default_goal_cell
  std::uint64_t seed = 1;
  double time_limit = 600.0;
  std::optional<std::filesystem::path> memory_log;
};

struct RunResult {
  std::optional<double> manoeuvring_time;  // nullopt on timeout
  int takeover_count = 0;
  int reclaim_count = 0;
  double path_length = 0.0;
  std::vector<DistanceSample> distance_trace;

  bool timed_out() const { return !manoeuvring_time.has_value(); }
  friend bool operator==(const RunResult&, const RunResult&) = default;
};

/// Runs one trial on an already loaded maze.
RunResult run_trial(const GridWorld& world, const RunConfig& config);
/// Loads the maze named in the config, then runs the trial.
RunResult run_trial(const RunConfig& config);

struct SuiteConfig {
  std::filesystem::path maze;
  std::vector<std::filesystem::path> subjects;
  std::vector<RunMode> modes;
  std::vector<std::uint64_t> seeds;
  std::filesystem::path out;
  double time_limit = 600.0;
};

/// key=value suite file. Relative paths resolve against `base_dir`.
SuiteConfig parse_suite_config(std::string_view body, const std::filesystem::path& base_dir = {});
SuiteConfig load_suite_config(const std::filesystem::path& path);

struct SuiteRow {
  std::string subject_id;
  int score = 0;
  CognitiveGroup group = CognitiveGroup::HCS;
  RunMode mode = RunMode::Collaborative;
  std::uint64_t seed = 0;
  RunResult result;
  std::optional<std::string> error;
};

/// Cartesian product of trials, ordered by (subject, mode, seed) in list order.
std::vector<SuiteRow> run_suite(const GridWorld& world, const std::vector<SubjectProfile>& subjects,
                                const std::vector<RunMode>& modes, const std::vector<std::uint64_t>& seeds,
                                double time_limit = 600.0);

/// Trial rows followed, per (subject, mode), by a median row (seed "median")
/// unless `medians` is false.
std::string suite_csv(const std::vector<SuiteRow>& rows, double time_limit, bool medians = true);

double median(std::vector<double> values);

}  // namespace c3a
