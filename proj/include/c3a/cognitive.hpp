#pragma once

#include <array>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace c3a {

enum class QuestionKind { YesNo, Fact };

/// Which piece of run-supplied ground truth a FACT question is checked against.
enum class FactKey { None, Date, City, Season, Floor, VowelCount };

struct QuestionItem {
  int id = 0;
  std::string prompt;
  QuestionKind kind = QuestionKind::YesNo;
  FactKey fact = FactKey::None;
};

struct Questionnaire {
  std::vector<QuestionItem> items;
};

/// The ten-item screening instrument used to derive the cognitive score.
const Questionnaire& standard_questionnaire();

/// Throws MalformedConfig unless there are exactly ten items with unique ids 1..10.
void validate(const Questionnaire& q);

enum class CognitiveGroup { LCS, HCS };

std::string_view to_string(CognitiveGroup g);
CognitiveGroup cognitive_group_from_string(std::string_view s);

inline constexpr int kQuestionCount = 10;
inline constexpr int kLowScoreMax = 4;

struct CognitiveProfile {
  std::string subject_id;
  std::array<bool, kQuestionCount> answers{};
  int score = 0;
  CognitiveGroup group = CognitiveGroup::LCS;

  friend bool operator==(const CognitiveProfile&, const CognitiveProfile&) = default;
};

struct ScoreResult {
  int score = 0;
  CognitiveGroup group = CognitiveGroup::LCS;
};

/// One point per correct or positive answer; 0-4 is LCS, 5-10 HCS.
ScoreResult score_answers(std::span<const bool> answers);
CognitiveGroup group_for_score(int score);

CognitiveProfile make_profile(std::string subject_id, const std::array<bool, kQuestionCount>& answers);

enum class TrendLabel { Improving, Worsening, Neutral };

std::string_view to_string(TrendLabel t);
TrendLabel trend_label_from_string(std::string_view s);

struct PriorityConfig {
  CognitiveGroup group = CognitiveGroup::HCS;
  double pause_timeout = 0.8;
  double trend_window = 3.0;
  double worsen_epsilon = 0.05;
  std::set<TrendLabel> takeover_trends{TrendLabel::Worsening};

  friend bool operator==(const PriorityConfig&, const PriorityConfig&) = default;

  bool takes_over_on(TrendLabel t) const { return takeover_trends.count(t) != 0; }
};

/// LCS users get the eager policy (takeover on WORSENING or NEUTRAL after a
/// 0.4 s pause); HCS users only on WORSENING after 0.8 s.
PriorityConfig make_priority_config(const CognitiveProfile& profile);
PriorityConfig make_priority_config(CognitiveGroup group);

std::string serialize(const PriorityConfig& cfg);
PriorityConfig parse_priority_config(std::string_view text);

/// key=value text; unknown keys are preserved by the caller, not here.
std::string serialize(const CognitiveProfile& profile);
CognitiveProfile parse_cognitive_profile(std::string_view text);

/// Run-supplied answers for the orientation questions.
struct FactGroundTruth {
  std::string date;
  std::string city;
  std::string season;
  std::string floor;
};

/// Returns the raw response for an item, or nullopt if the user aborts.
using AnswerSource = std::function<std::optional<std::string>(const QuestionItem&)>;

struct AdministeredAssessment {
  CognitiveProfile profile;
  std::vector<std::string> raw_responses;
};

/// Whether a single raw response earns the item's point.
bool evaluate_response(const QuestionItem& item, std::string_view response, const FactGroundTruth& truth);

int vowel_count(std::string_view word);

AdministeredAssessment administer(const Questionnaire& questionnaire, const AnswerSource& source,
                                  const FactGroundTruth& truth, std::string subject_id);

// Shared key=value helpers for the line-oriented config files.
std::vector<std::pair<std::string, std::string>> parse_key_values(std::string_view text);

}  // namespace c3a
