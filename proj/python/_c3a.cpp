#include <algorithm>
#include <memory>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "c3a/bus.hpp"
#include "c3a/cognitive.hpp"
#include "c3a/error.hpp"
#include "c3a/harness.hpp"
#include "c3a/heuristic.hpp"
#include "c3a/navigator.hpp"
#include "c3a/perception.hpp"
#include "c3a/world_sim.hpp"

namespace py = pybind11;
using namespace c3a;

namespace {

using Cell = std::pair<int, int>;

CellIndex to_cell(const Cell& c) { return {c.first, c.second}; }

py::dict plan_dict(const PlanSearchResult& r) {
  py::list cells;
  for (const auto& c : r.plan.cells) cells.append(py::make_tuple(c.i, c.j));
  py::dict d;
  d["cells"] = cells;
  d["cost"] = r.plan.cost;
  d["weight"] = r.weight;
  return d;
}

PriorityConfig priority_for(const std::string& group) {
  return make_priority_config(cognitive_group_from_string(group));
}

}  // namespace

PYBIND11_MODULE(_c3a, m) {
  m.doc() = "Collaborative-control maze navigation core";

  // Instances carry the error kind as `kind`.
  static PyObject* error = PyErr_NewException("c3a._c3a.C3AError", PyExc_RuntimeError, nullptr);
  m.add_object("C3AError", py::handle(error));
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object inst = py::handle(error)(e.what());
      inst.attr("kind") = std::string(to_string(e.kind()));
      PyErr_SetObject(error, inst.ptr());
    }
  });

  py::class_<Pose2D>(m, "Pose2D")
      .def(py::init<double, double, double>(), py::arg("x") = 0.0, py::arg("y") = 0.0, py::arg("theta") = 0.0)
      .def_readwrite("x", &Pose2D::x)
      .def_readwrite("y", &Pose2D::y)
      .def_readwrite("theta", &Pose2D::theta)
      .def("__eq__", [](const Pose2D& a, const Pose2D& b) { return a == b; })
      .def("__repr__", [](const Pose2D& p) {
        return "Pose2D(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ", " + std::to_string(p.theta) + ")";
      });

  py::class_<GridWorld>(m, "GridWorld")
      .def_property_readonly("width", [](const GridWorld& w) { return w.geometry.width; })
      .def_property_readonly("height", [](const GridWorld& w) { return w.geometry.height; })
      .def_property_readonly("resolution", [](const GridWorld& w) { return w.geometry.resolution; })
      .def_readonly("start_pose", &GridWorld::start_pose)
      .def_readonly("robot_radius", &GridWorld::robot_radius)
      .def("is_wall", [](const GridWorld& w, int i, int j) { return w.is_wall({i, j}); })
      .def("default_goal", [](const GridWorld& w) {
        const CellIndex c = default_goal_cell(w);
        return Cell{c.i, c.j};
      });

  m.def("load_maze", &load_maze, py::arg("text"), py::arg("resolution") = 0.25, py::arg("robot_radius") = 0.3);
  m.def("load_maze_file", &load_maze_file, py::arg("path"), py::arg("resolution") = 0.25,
        py::arg("robot_radius") = 0.3);

  m.def(
      "step_kinematics",
      [](const Pose2D& pose, double linear, double angular, double dt) {
        return step_kinematics(pose, {linear, angular, ControlMode::Machine, 0.0}, dt);
      },
      py::arg("pose"), py::arg("linear"), py::arg("angular"), py::arg("dt"));
  m.def(
      "advance",
      [](const GridWorld& w, const Pose2D& pose, double linear, double angular, double dt) {
        return advance(w, pose, {linear, angular, ControlMode::Machine, 0.0}, dt);
      },
      py::arg("world"), py::arg("pose"), py::arg("linear"), py::arg("angular"), py::arg("dt"),
      "Kinematic step that stops short of walls.");
  m.def(
      "cast_scan",
      [](const GridWorld& w, const Pose2D& pose) { return cast_scan(w, pose, ScanParams{}).ranges; },
      py::arg("world"), py::arg("pose"), "Ranges of the 181-beam front scan.");

  // Planning runs on the true map, seen as a fully explored grid.
  m.def(
      "plan",
      [](const GridWorld& w, const Cell& start, const Cell& goal) {
        const Costmap cm = build_costmap(ternary_from_world(w));
        return plan_dict(plan_global_weighted(cm, to_cell(start), to_cell(goal)));
      },
      py::arg("world"), py::arg("start"), py::arg("goal"));

  m.def(
      "score_answers",
      [](const std::vector<bool>& answers) {
        const auto raw = std::make_unique<bool[]>(answers.size());
        std::copy(answers.begin(), answers.end(), raw.get());
        const ScoreResult r = score_answers({raw.get(), answers.size()});
        return py::make_tuple(r.score, std::string(to_string(r.group)));
      },
      py::arg("answers"));
  m.def(
      "priority_config",
      [](const std::string& group) {
        const PriorityConfig c = priority_for(group);
        py::list trends;
        for (auto t : c.takeover_trends) trends.append(std::string(to_string(t)));
        py::dict d;
        d["group"] = std::string(to_string(c.group));
        d["pause_timeout"] = c.pause_timeout;
        d["trend_window"] = c.trend_window;
        d["worsen_epsilon"] = c.worsen_epsilon;
        d["takeover_trends"] = trends;
        return d;
      },
      py::arg("group"));
  m.def(
      "classify_trend",
      [](const std::vector<std::pair<double, double>>& samples, const std::string& group) {
        std::vector<DistanceSample> window;
        for (const auto& [t, d] : samples) window.push_back({t, d, DistanceBasis::Path});
        return std::string(to_string(classify_trend(window, priority_for(group))));
      },
      py::arg("samples"), py::arg("group"));

  py::class_<RunResult>(m, "RunResult")
      .def_readonly("manoeuvring_time", &RunResult::manoeuvring_time)
      .def_readonly("takeover_count", &RunResult::takeover_count)
      .def_readonly("reclaim_count", &RunResult::reclaim_count)
      .def_readonly("path_length", &RunResult::path_length)
      .def_property_readonly("timed_out", &RunResult::timed_out)
      .def_property_readonly("distance_trace",
                             [](const RunResult& r) {
                               std::vector<std::pair<double, double>> out;
                               for (const auto& s : r.distance_trace) out.emplace_back(s.t, s.d);
                               return out;
                             })
      .def("__eq__", [](const RunResult& a, const RunResult& b) { return a == b; });

  m.def(
      "run_trial",
      [](const GridWorld& w, const std::filesystem::path& subject, const std::string& mode, std::uint64_t seed,
         double time_limit, std::optional<Cell> goal) {
        RunConfig rc;
        rc.mode = run_mode_from_string(mode);
        rc.subject = load_subject_file(subject);
        rc.seed = seed;
        rc.time_limit = time_limit;
        if (goal) rc.goal = to_cell(*goal);
        py::gil_scoped_release release;
        return run_trial(w, rc);
      },
      py::arg("world"), py::arg("subject"), py::arg("mode") = "collab", py::arg("seed") = 1,
      py::arg("time_limit") = 600.0, py::arg("goal") = py::none());

  m.def("topics", [] {
    std::vector<std::pair<std::string, bool>> out;
    for (Topic t : kAllTopics) out.emplace_back(std::string(topic_name(t)), is_latched(t));
    return out;
  });
  m.def(
      "bridge_canonical", [](const std::string& frame) { return bridge_encode(bridge_decode(frame)); },
      py::arg("frame"), "Decodes a bridge frame and encodes it again in canonical form.");
}
