#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace c3a {

enum class ErrorKind {
  // world_sim
  NonRectangular,
  UnknownSymbol,
  NoStart,
  OpenBoundary,
  // perception
  PoseOutsideMap,
  IoFailure,
  MalformedHeader,
  GeometryMismatch,
  // navigator
  NoPath,
  GoalLethal,
  StartLethal,
  NoPlan,
  // cognitive_assessment
  WrongAnswerCount,
  AbortedByUser,
  MalformedConfig,
  // heuristic_engine
  NoGoal,
  // memory_module
  StaleStamp,
  KeyAbsent,
  // interaction_bus
  UnknownTopic,
  PayloadTypeMismatch,
  MalformedFrame,
  // experiment_harness
  ConfigInvalid,
};

std::string_view to_string(ErrorKind kind);

/// Exception carrying a machine-checkable error kind alongside the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace c3a
