#include "c3a/cognitive.hpp"

#include <algorithm>
#include <sstream>

#include "c3a/error.hpp"
#include "c3a/text.hpp"

namespace c3a {

const Questionnaire& standard_questionnaire() {
  static const Questionnaire q{{
      {1, "Have you played any game before?", QuestionKind::YesNo, FactKey::None},
      {2, "Do you know about mazes?", QuestionKind::YesNo, FactKey::None},
      {3, "Can you solve a maze on paper?", QuestionKind::YesNo, FactKey::None},
      {4, "Can you utilize essential features of your mobile phone?", QuestionKind::YesNo, FactKey::None},
      {5, "Can you prepare adequate meals if supplied with ingredients?", QuestionKind::YesNo, FactKey::None},
      {6, "What is today's date?", QuestionKind::Fact, FactKey::Date},
      {7, "What city are we in?", QuestionKind::Fact, FactKey::City},
      {8, "Can you also tell me, what season it is?", QuestionKind::Fact, FactKey::Season},
      {9, "What floor are we in?", QuestionKind::Fact, FactKey::Floor},
      {10, "How many vowels in the word aeroplane?", QuestionKind::Fact, FactKey::VowelCount},
  }};
  return q;
}

void validate(const Questionnaire& q) {
  if (q.items.size() != kQuestionCount) {
    throw Error(ErrorKind::MalformedConfig, "questionnaire must have exactly 10 items, has " +
                                                std::to_string(q.items.size()));
  }
  std::array<bool, kQuestionCount + 1> seen{};
  for (const auto& item : q.items) {
    if (item.id < 1 || item.id > kQuestionCount || seen[item.id]) {
      throw Error(ErrorKind::MalformedConfig, "questionnaire ids must be unique in 1..10");
    }
    seen[item.id] = true;
  }
}

std::string_view to_string(CognitiveGroup g) { return g == CognitiveGroup::LCS ? "LCS" : "HCS"; }

CognitiveGroup cognitive_group_from_string(std::string_view s) {
  if (s == "LCS") return CognitiveGroup::LCS;
  if (s == "HCS") return CognitiveGroup::HCS;
  throw Error(ErrorKind::MalformedConfig, "unknown cognitive group '" + std::string(s) + "'");
}

CognitiveGroup group_for_score(int score) { return score <= kLowScoreMax ? CognitiveGroup::LCS : CognitiveGroup::HCS; }

ScoreResult score_answers(std::span<const bool> answers) {
  if (answers.size() != kQuestionCount) {
    throw Error(ErrorKind::WrongAnswerCount, "expected 10 answers, got " + std::to_string(answers.size()));
  }
  const int score = static_cast<int>(std::count(answers.begin(), answers.end(), true));
  return {score, group_for_score(score)};
}

CognitiveProfile make_profile(std::string subject_id, const std::array<bool, kQuestionCount>& answers) {
  const ScoreResult r = score_answers(answers);
  return {std::move(subject_id), answers, r.score, r.group};
}

std::string_view to_string(TrendLabel t) {
  switch (t) {
    case TrendLabel::Improving:
      return "IMPROVING";
    case TrendLabel::Worsening:
      return "WORSENING";
    case TrendLabel::Neutral:
      break;
  }
  return "NEUTRAL";
}

TrendLabel trend_label_from_string(std::string_view s) {
  if (s == "IMPROVING") return TrendLabel::Improving;
  if (s == "WORSENING") return TrendLabel::Worsening;
  if (s == "NEUTRAL") return TrendLabel::Neutral;
  throw Error(ErrorKind::MalformedConfig, "unknown trend label '" + std::string(s) + "'");
}

PriorityConfig make_priority_config(CognitiveGroup group) {
  PriorityConfig cfg;
  cfg.group = group;
  cfg.trend_window = 3.0;
  cfg.worsen_epsilon = 0.05;
  if (group == CognitiveGroup::LCS) {
    cfg.pause_timeout = 0.4;
    cfg.takeover_trends = {TrendLabel::Worsening, TrendLabel::Neutral};
  } else {
    cfg.pause_timeout = 0.8;
    cfg.takeover_trends = {TrendLabel::Worsening};
  }
  return cfg;
}

PriorityConfig make_priority_config(const CognitiveProfile& profile) { return make_priority_config(profile.group); }

std::vector<std::pair<std::string, std::string>> parse_key_values(std::string_view body) {
  std::vector<std::pair<std::string, std::string>> out;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos <= body.size()) {
    const std::size_t nl = body.find('\n', pos);
    const std::size_t end = nl == std::string_view::npos ? body.size() : nl;
    std::string_view line = text::trim(body.substr(pos, end - pos));
    ++line_no;
    if (!line.empty() && line.front() != '#') {
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) {
        throw Error(ErrorKind::MalformedConfig, "line " + std::to_string(line_no) + " is not key=value");
      }
      out.emplace_back(std::string(text::trim(line.substr(0, eq))), std::string(text::trim(line.substr(eq + 1))));
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return out;
}

namespace {

const std::string& require(const std::vector<std::pair<std::string, std::string>>& kv, const std::string& key) {
  for (const auto& [k, v] : kv) {
    if (k == key) return v;
  }
  throw Error(ErrorKind::MalformedConfig, "missing key '" + key + "'");
}

double require_double(const std::vector<std::pair<std::string, std::string>>& kv, const std::string& key) {
  const auto v = text::parse_double(require(kv, key));
  if (!v) throw Error(ErrorKind::MalformedConfig, "key '" + key + "' is not a number");
  return *v;
}

}  // namespace

std::string serialize(const PriorityConfig& cfg) {
  std::ostringstream out;
  out << "group=" << to_string(cfg.group) << '\n'
      << "pause_timeout=" << text::format_double(cfg.pause_timeout) << '\n'
      << "trend_window=" << text::format_double(cfg.trend_window) << '\n'
      << "worsen_epsilon=" << text::format_double(cfg.worsen_epsilon) << '\n'
      << "takeover_trends=";
  bool first = true;
  for (TrendLabel t : cfg.takeover_trends) {
    out << (first ? "" : ",") << to_string(t);
    first = false;
  }
  out << '\n';
  return out.str();
}

PriorityConfig parse_priority_config(std::string_view body) {
  const auto kv = parse_key_values(body);
  PriorityConfig cfg;
  cfg.group = cognitive_group_from_string(require(kv, "group"));
  cfg.pause_timeout = require_double(kv, "pause_timeout");
  cfg.trend_window = require_double(kv, "trend_window");
  cfg.worsen_epsilon = require_double(kv, "worsen_epsilon");
  if (!(cfg.pause_timeout > 0.0)) throw Error(ErrorKind::MalformedConfig, "pause_timeout must be positive");
  cfg.takeover_trends.clear();
  std::string_view list = require(kv, "takeover_trends");
  while (!list.empty()) {
    const auto comma = list.find(',');
    const std::string_view item = text::trim(list.substr(0, comma));
    if (!item.empty()) cfg.takeover_trends.insert(trend_label_from_string(item));
    if (comma == std::string_view::npos) break;
    list.remove_prefix(comma + 1);
  }
  return cfg;
}

std::string serialize(const CognitiveProfile& profile) {
  std::string answers;
  for (bool a : profile.answers) answers.push_back(a ? '1' : '0');
  std::ostringstream out;
  out << "subject_id=" << profile.subject_id << '\n'
      << "answers=" << answers << '\n'
      << "score=" << profile.score << '\n'
      << "group=" << to_string(profile.group) << '\n';
  return out.str();
}

CognitiveProfile parse_cognitive_profile(std::string_view body) {
  const auto kv = parse_key_values(body);
  const std::string& answers = require(kv, "answers");
  if (answers.size() != kQuestionCount || answers.find_first_not_of("01") != std::string::npos) {
    throw Error(ErrorKind::WrongAnswerCount, "answers must be ten 0/1 digits");
  }
  std::array<bool, kQuestionCount> a{};
  for (int k = 0; k < kQuestionCount; ++k) a[k] = answers[k] == '1';
  CognitiveProfile p = make_profile(require(kv, "subject_id"), a);
  for (const auto& [k, v] : kv) {
    if (k == "score" && text::parse_int(v) != p.score) {
      throw Error(ErrorKind::MalformedConfig, "score " + v + " disagrees with answers (" + std::to_string(p.score) + ")");
    }
    if (k == "group" && cognitive_group_from_string(v) != p.group) {
      throw Error(ErrorKind::MalformedConfig, "group " + v + " disagrees with score " + std::to_string(p.score));
    }
  }
  return p;
}

int vowel_count(std::string_view word) {
  return static_cast<int>(std::count_if(word.begin(), word.end(), [](char c) {
    const char l = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return l == 'a' || l == 'e' || l == 'i' || l == 'o' || l == 'u';
  }));
}

bool evaluate_response(const QuestionItem& item, std::string_view response, const FactGroundTruth& truth) {
  const std::string r = text::to_lower(text::trim(response));
  if (item.kind == QuestionKind::YesNo) return r == "y" || r == "yes";
  auto matches = [&](const std::string& expected) {
    return !expected.empty() && r == text::to_lower(text::trim(expected));
  };
  switch (item.fact) {
    case FactKey::Date:
      return matches(truth.date);
    case FactKey::City:
      return matches(truth.city);
    case FactKey::Season:
      return matches(truth.season);
    case FactKey::Floor:
      return matches(truth.floor);
    case FactKey::VowelCount:
      return text::parse_int(r) == vowel_count("aeroplane");
    case FactKey::None:
      break;
  }
  return false;
}

AdministeredAssessment administer(const Questionnaire& questionnaire, const AnswerSource& source,
                                  const FactGroundTruth& truth, std::string subject_id) {
  validate(questionnaire);
  AdministeredAssessment out;
  std::array<bool, kQuestionCount> answers{};
  for (const auto& item : questionnaire.items) {
    const auto response = source(item);
    if (!response) throw Error(ErrorKind::AbortedByUser, "assessment aborted at item " + std::to_string(item.id));
    out.raw_responses.push_back(*response);
    answers[item.id - 1] = evaluate_response(item, *response, truth);
  }
  out.profile = make_profile(std::move(subject_id), answers);
  return out;
}

}  // namespace c3a
