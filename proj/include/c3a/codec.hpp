#pragma once

// JSON representations shared by the memory log and the network bridge.

#include <json.hpp>

#include "c3a/cognitive.hpp"
#include "c3a/heuristic.hpp"
#include "c3a/memory.hpp"
#include "c3a/messages.hpp"
#include "c3a/perception.hpp"
#include "c3a/types.hpp"
#include "c3a/world_sim.hpp"

namespace c3a {

using nlohmann::json;

void to_json(json& j, const Pose2D& v);
void from_json(const json& j, Pose2D& v);
void to_json(json& j, const VelocityCommand& v);
void from_json(const json& j, VelocityCommand& v);
void to_json(json& j, const LaserScan& v);
void from_json(const json& j, LaserScan& v);
void to_json(json& j, const PoseEstimate& v);
void from_json(const json& j, PoseEstimate& v);
void to_json(json& j, const TernaryGrid& v);
void from_json(const json& j, TernaryGrid& v);
void to_json(json& j, const GoalPose& v);
void from_json(const json& j, GoalPose& v);
void to_json(json& j, const ModeAnnouncement& v);
void from_json(const json& j, ModeAnnouncement& v);
void to_json(json& j, const DistanceSample& v);
void from_json(const json& j, DistanceSample& v);
void to_json(json& j, const TrendSignal& v);
void from_json(const json& j, TrendSignal& v);
void to_json(json& j, const StateAction& v);
void from_json(const json& j, StateAction& v);
void to_json(json& j, const EpisodicEvent& v);
void from_json(const json& j, EpisodicEvent& v);
void to_json(json& j, const CognitiveProfile& v);
void from_json(const json& j, CognitiveProfile& v);

}  // namespace c3a
