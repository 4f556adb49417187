#include <atomic>
#include <csignal>
#include <ctime>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "c3a/cognitive.hpp"
#include "c3a/error.hpp"
#include "c3a/harness.hpp"
#include "c3a/memory.hpp"
#include "c3a/serve.hpp"
#include "c3a/text.hpp"

namespace {

std::atomic<bool> g_stop{false};

void on_signal(int) { g_stop = true; }

std::optional<c3a::CellIndex> parse_cell(const std::string& s) {
  if (s.empty()) return std::nullopt;
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw c3a::Error(c3a::ErrorKind::ConfigInvalid, "goal must be given as i,j");
  const auto i = c3a::text::parse_int(s.substr(0, comma));
  const auto j = c3a::text::parse_int(s.substr(comma + 1));
  if (!i || !j) throw c3a::Error(c3a::ErrorKind::ConfigInvalid, "goal must be given as i,j");
  return c3a::CellIndex{static_cast<int>(*i), static_cast<int>(*j)};
}

void write_output(const std::string& path, const std::string& body) {
  if (path.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out << body;
  if (!out) throw c3a::Error(c3a::ErrorKind::IoFailure, "cannot write " + path);
}

std::string today() {
  const std::time_t t = std::time(nullptr);
  char buf[16];
  std::strftime(buf, sizeof buf, "%Y-%m-%d", std::localtime(&t));
  return buf;
}

void print_episode(const c3a::EpisodicEvent& e) {
  std::cout << "episode " << e.event_id << ' ' << c3a::to_string(e.kind) << " t=["
            << c3a::text::format_fixed(e.t_start, 2) << ", " << c3a::text::format_fixed(e.t_end, 2)
            << "] actions=" << e.trace.size() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Collaborative-control maze navigation: simulation, experiments and live bridge"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Run one trial and print its CSV row");
  std::string maze, mode = "collab", subject, out, goal, memory_log;
  std::uint64_t seed = 1;
  double time_limit = 600.0;
  run->add_option("--maze", maze, "Maze text file")->required()->check(CLI::ExistingFile);
  run->add_option("--mode", mode, "human, machine or collab")->check(CLI::IsMember({"human", "machine", "collab"}));
  run->add_option("--subject", subject, "Subject profile file")->required()->check(CLI::ExistingFile);
  run->add_option("--seed", seed, "Trial seed");
  run->add_option("--out", out, "Write the CSV here instead of stdout");
  run->add_option("--goal", goal, "Goal cell i,j (default: far corner)");
  run->add_option("--time-limit", time_limit, "Sim-time limit in seconds");
  run->add_option("--memory-log", memory_log, "Memory log file");

  // suite
  auto* suite = app.add_subcommand("suite", "Run a suite of trials and write the results CSV");
  std::string suite_config, suite_out;
  suite->add_option("--config", suite_config, "Suite config file")->required()->check(CLI::ExistingFile);
  suite->add_option("--out", suite_out, "Override the config's output path ('-' for stdout)");

  // serve
  auto* serve = app.add_subcommand("serve", "Live collaborative session behind a WebSocket bridge");
  std::string serve_maze, serve_subject, address = "127.0.0.1", serve_goal, serve_memory;
  std::uint16_t port = 8765;
  std::uint64_t serve_seed = 1;
  double pace = 1.0;
  double duration = 0.0;
  serve->add_option("--port", port, "TCP port (0 picks a free one)");
  serve->add_option("--address", address, "Bind address");
  serve->add_option("--maze", serve_maze, "Maze text file")->required()->check(CLI::ExistingFile);
  serve->add_option("--subject", serve_subject, "Subject profile file")->required()->check(CLI::ExistingFile);
  serve->add_option("--seed", serve_seed, "Localization seed");
  serve->add_option("--goal", serve_goal, "Initial goal cell i,j (default: none until the UI sets one)");
  serve->add_option("--pace", pace, "Wall seconds per sim second (0: as fast as possible)");
  serve->add_option("--duration", duration, "Stop after this many sim seconds (0: run until interrupted)");
  serve->add_option("--memory-log", serve_memory, "Memory log file");

  // assess
  auto* assess = app.add_subcommand("assess", "Administer the ten-item cognitive questionnaire on stdin");
  std::string subject_id = "subject", date = today(), city, season, floor, assess_out;
  assess->add_option("--subject-id", subject_id, "Identifier stored in the profile");
  assess->add_option("--date", date, "Expected answer for today's date");
  assess->add_option("--city", city, "Expected answer for the city");
  assess->add_option("--season", season, "Expected answer for the season");
  assess->add_option("--floor", floor, "Expected answer for the floor");
  assess->add_option("--out", assess_out, "Write the profile here instead of stdout");

  // replay
  auto* replay = app.add_subcommand("replay", "Rebuild a memory log and print its episodes");
  std::string replay_log;
  replay->add_option("log", replay_log, "Memory log file")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      c3a::RunConfig rc;
      rc.mode = c3a::run_mode_from_string(mode);
      rc.maze = maze;
      rc.subject = c3a::load_subject_file(subject);
      rc.goal = parse_cell(goal);
      rc.seed = seed;
      rc.time_limit = time_limit;
      if (!memory_log.empty()) rc.memory_log = memory_log;
      c3a::SuiteRow row;
      row.subject_id = rc.subject.profile.subject_id;
      row.score = rc.subject.profile.score;
      row.group = rc.subject.profile.group;
      row.mode = rc.mode;
      row.seed = seed;
      row.result = c3a::run_trial(rc);
      write_output(out, c3a::suite_csv({row}, time_limit, false));
    } else if (*suite) {
      const c3a::SuiteConfig cfg = c3a::load_suite_config(suite_config);
      const c3a::GridWorld world = c3a::load_maze_file(cfg.maze.string());
      std::vector<c3a::SubjectProfile> subjects;
      for (const auto& p : cfg.subjects) subjects.push_back(c3a::load_subject_file(p));
      const auto rows = c3a::run_suite(world, subjects, cfg.modes, cfg.seeds, cfg.time_limit);
      std::string target = suite_out.empty() ? cfg.out.string() : suite_out;
      if (target == "-") target.clear();
      write_output(target, c3a::suite_csv(rows, cfg.time_limit));
    } else if (*serve) {
      c3a::ServeOptions opts;
      opts.address = address;
      opts.port = port;
      opts.world = c3a::load_maze_file(serve_maze);
      opts.session.mode = c3a::RunMode::Collaborative;
      opts.session.profile = c3a::load_subject_file(serve_subject).profile;
      opts.session.goal = parse_cell(serve_goal);
      opts.session.seed = serve_seed;
      if (!serve_memory.empty()) opts.session.memory_log = serve_memory;
      opts.pace = pace;
      if (duration > 0.0) opts.sim_duration = duration;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      c3a::serve(opts, g_stop, [](std::uint16_t p) {
        std::cout << "c3a serve: listening on ws port " << p << std::endl;
      });
    } else if (*assess) {
      const c3a::FactGroundTruth truth{date, city, season, floor};
      const auto answers = [](const c3a::QuestionItem& item) -> std::optional<std::string> {
        std::cout << item.id << ". " << item.prompt << "\n> " << std::flush;
        std::string line;
        if (!std::getline(std::cin, line)) return std::nullopt;
        return line;
      };
      const auto result = c3a::administer(c3a::standard_questionnaire(), answers, truth, subject_id);
      if (assess_out.empty()) std::cout << '\n';
      write_output(assess_out, c3a::serialize(result.profile));
    } else if (*replay) {
      const c3a::MemoryStore store{std::filesystem::path(replay_log)};
      if (store.contains(c3a::ProceduralKey::CognitiveScore)) {
        const auto p = std::get<c3a::CognitiveProfile>(store.get(c3a::ProceduralKey::CognitiveScore));
        std::cout << "subject " << p.subject_id << " score " << p.score << ' ' << c3a::to_string(p.group) << '\n';
      }
      if (store.contains(c3a::ProceduralKey::Goal)) {
        const auto g = std::get<c3a::GoalPose>(store.get(c3a::ProceduralKey::Goal));
        std::cout << "goal cell " << g.cell.i << ',' << g.cell.j << '\n';
      }
      std::cout << "state-action records " << store.state_actions().size() << '\n';
      for (const auto& e : store.episodes()) print_episode(e);
    }
  } catch (const c3a::Error& e) {
    std::cerr << "c3a: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "c3a: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
