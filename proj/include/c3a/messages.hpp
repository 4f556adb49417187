#pragma once

#include <string_view>

#include "c3a/cognitive.hpp"
#include "c3a/types.hpp"

namespace c3a {

enum class ModeCause { Takeover, Reclaim, Init };

std::string_view to_string(ModeCause c);
ModeCause mode_cause_from_string(std::string_view s);

struct ModeAnnouncement {
  ControlMode mode = ControlMode::Human;
  ModeCause cause = ModeCause::Init;
  double stamp = 0.0;

  friend bool operator==(const ModeAnnouncement&, const ModeAnnouncement&) = default;
};

struct TrendSignal {
  TrendLabel label = TrendLabel::Neutral;
  double stamp = 0.0;

  friend bool operator==(const TrendSignal&, const TrendSignal&) = default;
};

}  // namespace c3a
