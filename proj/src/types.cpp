#include "c3a/types.hpp"

#include <string>

#include "c3a/error.hpp"

namespace c3a {

std::string_view to_string(ControlMode mode) { return mode == ControlMode::Human ? "HUMAN" : "MACHINE"; }

ControlMode control_mode_from_string(std::string_view s) {
  if (s == "HUMAN") return ControlMode::Human;
  if (s == "MACHINE") return ControlMode::Machine;
  throw Error(ErrorKind::MalformedConfig, "unknown control mode '" + std::string(s) + "'");
}

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonRectangular: return "NonRectangular";
    case ErrorKind::UnknownSymbol: return "UnknownSymbol";
    case ErrorKind::NoStart: return "NoStart";
    case ErrorKind::OpenBoundary: return "OpenBoundary";
    case ErrorKind::PoseOutsideMap: return "PoseOutsideMap";
    case ErrorKind::IoFailure: return "IoFailure";
    case ErrorKind::MalformedHeader: return "MalformedHeader";
    case ErrorKind::GeometryMismatch: return "GeometryMismatch";
    case ErrorKind::NoPath: return "NoPath";
    case ErrorKind::GoalLethal: return "GoalLethal";
    case ErrorKind::StartLethal: return "StartLethal";
    case ErrorKind::NoPlan: return "NoPlan";
    case ErrorKind::WrongAnswerCount: return "WrongAnswerCount";
    case ErrorKind::AbortedByUser: return "AbortedByUser";
    case ErrorKind::MalformedConfig: return "MalformedConfig";
    case ErrorKind::NoGoal: return "NoGoal";
    case ErrorKind::StaleStamp: return "StaleStamp";
    case ErrorKind::KeyAbsent: return "KeyAbsent";
    case ErrorKind::UnknownTopic: return "UnknownTopic";
    case ErrorKind::PayloadTypeMismatch: return "PayloadTypeMismatch";
    case ErrorKind::MalformedFrame: return "MalformedFrame";
    case ErrorKind::ConfigInvalid: return "ConfigInvalid";
  }
  return "Unknown";
}

}  // namespace c3a
