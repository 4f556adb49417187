#include "c3a/codec.hpp"

#include "c3a/error.hpp"

namespace c3a {

void to_json(json& j, const Pose2D& v) { j = json{{"x", v.x}, {"y", v.y}, {"theta", v.theta}}; }
void from_json(const json& j, Pose2D& v) {
  v.x = j.at("x").get<double>();
  v.y = j.at("y").get<double>();
  v.theta = j.at("theta").get<double>();
}

void to_json(json& j, const VelocityCommand& v) {
  j = json{{"linear", v.linear}, {"angular", v.angular}, {"source", to_string(v.source)}, {"stamp", v.stamp}};
}
void from_json(const json& j, VelocityCommand& v) {
  v.linear = j.at("linear").get<double>();
  v.angular = j.at("angular").get<double>();
  v.source = control_mode_from_string(j.value("source", std::string("HUMAN")));
  v.stamp = j.value("stamp", 0.0);
}

void to_json(json& j, const LaserScan& v) {
  j = json{{"angle_min", v.angle_min},     {"angle_max", v.angle_max}, {"angle_increment", v.angle_increment},
           {"range_max", v.range_max},     {"ranges", v.ranges},       {"stamp", v.stamp}};
}
void from_json(const json& j, LaserScan& v) {
  v.angle_min = j.at("angle_min").get<double>();
  v.angle_max = j.at("angle_max").get<double>();
  v.angle_increment = j.at("angle_increment").get<double>();
  v.range_max = j.at("range_max").get<double>();
  v.ranges = j.at("ranges").get<std::vector<double>>();
  v.stamp = j.at("stamp").get<double>();
}

void to_json(json& j, const PoseEstimate& v) {
  j = json{{"mean", v.mean}, {"covariance", v.covariance}, {"stamp", v.stamp}};
}
void from_json(const json& j, PoseEstimate& v) {
  v.mean = j.at("mean").get<Pose2D>();
  v.covariance = j.at("covariance").get<std::array<double, 9>>();
  v.stamp = j.at("stamp").get<double>();
}

void to_json(json& j, const TernaryGrid& v) {
  std::vector<int> cells(v.cells.size());
  for (std::size_t k = 0; k < cells.size(); ++k) {
    switch (v.cells[k]) {
      case Occupancy::Free: cells[k] = kRasterFree; break;
      case Occupancy::Occupied: cells[k] = kRasterOccupied; break;
      case Occupancy::Unknown: cells[k] = kRasterUnknown; break;
    }
  }
  const auto& g = v.geometry;
  j = json{{"width", g.width},
           {"height", g.height},
           {"resolution", g.resolution},
           {"origin", {g.origin.x, g.origin.y, g.origin.theta}},
           {"cells", cells}};
}
void from_json(const json& j, TernaryGrid& v) {
  auto& g = v.geometry;
  g.width = j.at("width").get<int>();
  g.height = j.at("height").get<int>();
  g.resolution = j.at("resolution").get<double>();
  const auto origin = j.at("origin").get<std::vector<double>>();
  if (origin.size() != 3) throw Error(ErrorKind::MalformedFrame, "grid origin must have three components");
  g.origin = {origin[0], origin[1], origin[2]};
  const auto cells = j.at("cells").get<std::vector<int>>();
  if (g.width < 0 || g.height < 0 || cells.size() != g.size()) {
    throw Error(ErrorKind::MalformedFrame, "grid cell count does not match width x height");
  }
  v.cells.resize(cells.size());
  for (std::size_t k = 0; k < cells.size(); ++k) {
    switch (cells[k]) {
      case kRasterFree: v.cells[k] = Occupancy::Free; break;
      case kRasterOccupied: v.cells[k] = Occupancy::Occupied; break;
      case kRasterUnknown: v.cells[k] = Occupancy::Unknown; break;
      default: throw Error(ErrorKind::MalformedFrame, "grid cell value " + std::to_string(cells[k]) + " is not 0/205/254");
    }
  }
}

void to_json(json& j, const GoalPose& v) {
  j = json{{"pose", v.pose}, {"cell", {v.cell.i, v.cell.j}}, {"stamp", v.stamp}};
}
void from_json(const json& j, GoalPose& v) {
  v.pose = j.at("pose").get<Pose2D>();
  const auto cell = j.at("cell").get<std::vector<int>>();
  if (cell.size() != 2) throw Error(ErrorKind::MalformedFrame, "goal cell must be [i, j]");
  v.cell = {cell[0], cell[1]};
  v.stamp = j.at("stamp").get<double>();
}

void to_json(json& j, const ModeAnnouncement& v) {
  j = json{{"mode", to_string(v.mode)}, {"cause", to_string(v.cause)}, {"stamp", v.stamp}};
}
void from_json(const json& j, ModeAnnouncement& v) {
  v.mode = control_mode_from_string(j.at("mode").get<std::string>());
  v.cause = mode_cause_from_string(j.at("cause").get<std::string>());
  v.stamp = j.at("stamp").get<double>();
}

void to_json(json& j, const DistanceSample& v) {
  j = json{{"t", v.t}, {"d", v.d}, {"basis", v.basis == DistanceBasis::Path ? "PATH" : "EUCLIDEAN"}};
}
void from_json(const json& j, DistanceSample& v) {
  v.t = j.at("t").get<double>();
  v.d = j.at("d").get<double>();
  const auto basis = j.at("basis").get<std::string>();
  if (basis == "PATH") {
    v.basis = DistanceBasis::Path;
  } else if (basis == "EUCLIDEAN") {
    v.basis = DistanceBasis::Euclidean;
  } else {
    throw Error(ErrorKind::MalformedFrame, "unknown distance basis '" + basis + "'");
  }
}

void to_json(json& j, const TrendSignal& v) { j = json{{"label", to_string(v.label)}, {"stamp", v.stamp}}; }
void from_json(const json& j, TrendSignal& v) {
  v.label = trend_label_from_string(j.at("label").get<std::string>());
  v.stamp = j.at("stamp").get<double>();
}

void to_json(json& j, const StateAction& v) {
  j = json{{"stamp", v.stamp}, {"mode", to_string(v.mode)}, {"command", v.command}, {"pose", v.pose}};
}
void from_json(const json& j, StateAction& v) {
  v.stamp = j.at("stamp").get<double>();
  v.mode = control_mode_from_string(j.at("mode").get<std::string>());
  v.command = j.at("command").get<VelocityCommand>();
  v.pose = j.at("pose").get<Pose2D>();
}

void to_json(json& j, const EpisodicEvent& v) {
  j = json{{"event_id", v.event_id}, {"kind", to_string(v.kind)}, {"t_start", v.t_start},
           {"t_end", v.t_end},       {"trace", v.trace}};
}
void from_json(const json& j, EpisodicEvent& v) {
  v.event_id = j.at("event_id").get<std::int64_t>();
  v.kind = episode_kind_from_string(j.at("kind").get<std::string>());
  v.t_start = j.at("t_start").get<double>();
  v.t_end = j.at("t_end").get<double>();
  v.trace = j.at("trace").get<std::vector<StateAction>>();
}

void to_json(json& j, const CognitiveProfile& v) {
  std::string answers;
  for (bool a : v.answers) answers.push_back(a ? '1' : '0');
  j = json{{"subject_id", v.subject_id}, {"answers", answers}, {"score", v.score}, {"group", to_string(v.group)}};
}
void from_json(const json& j, CognitiveProfile& v) {
  const auto answers = j.at("answers").get<std::string>();
  if (answers.size() != kQuestionCount || answers.find_first_not_of("01") != std::string::npos) {
    throw Error(ErrorKind::MalformedFrame, "answers must be ten 0/1 digits");
  }
  std::array<bool, kQuestionCount> a{};
  for (int k = 0; k < kQuestionCount; ++k) a[k] = answers[k] == '1';
  v = make_profile(j.at("subject_id").get<std::string>(), a);
  if (j.at("score").get<int>() != v.score || j.at("group").get<std::string>() != to_string(v.group)) {
    throw Error(ErrorKind::MalformedFrame, "profile score/group disagree with answers");
  }
}

}  // namespace c3a
