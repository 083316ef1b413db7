#include "eqraq/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "eqraq/simulator.hpp"

namespace eqraq {

ScoreReport set_scores(const EntityBag& predicted, const EntityBag& truth) {
  ScoreReport r;
  r.support = 1;
  r.exact_matches = predicted == truth ? 1 : 0;
  if (predicted.empty() && truth.empty()) {
    r.precision = r.recall = r.f1 = 1.0;
    return r;
  }
  if (predicted.empty() || truth.empty()) return r;

  const auto overlap = double(std::count_if(predicted.begin(), predicted.end(),
                                            [&](const Name& n) { return truth.count(n) > 0; }));
  r.precision = overlap / double(predicted.size());
  r.recall = overlap / double(truth.size());
  if (overlap > 0) r.f1 = 2.0 * r.precision * r.recall / (r.precision + r.recall);
  return r;
}

void ScoreAccumulator::add(const EntityBag& predicted, const EntityBag& truth) {
  const auto s = set_scores(predicted, truth);
  precision_sum_ += s.precision;
  recall_sum_ += s.recall;
  f1_sum_ += s.f1;
  ++count_;
  exact_ += s.exact_matches;
}

void ScoreAccumulator::merge(const ScoreAccumulator& other) {
  precision_sum_ += other.precision_sum_;
  recall_sum_ += other.recall_sum_;
  f1_sum_ += other.f1_sum_;
  count_ += other.count_;
  exact_ += other.exact_;
}

ScoreReport ScoreAccumulator::report() const {
  ScoreReport r;
  r.support = count_;
  r.exact_matches = exact_;
  if (count_ == 0) return r;
  r.precision = precision_sum_ / double(count_);
  r.recall = recall_sum_ / double(count_);
  r.f1 = f1_sum_ / double(count_);
  return r;
}

namespace {
double ratio(std::size_t num, std::size_t den) { return den ? double(num) / double(den) : 0.0; }
}  // namespace

double MetricsReport::interaction_accuracy() const { return ratio(correct_turns, turns); }
double MetricsReport::query_accuracy() const { return ratio(correct_queries, queries); }
double MetricsReport::answer_accuracy() const { return ratio(correct_answers, answers); }
double MetricsReport::guess_rate() const { return ratio(guesses, answers); }

void MetricsAccumulator::add(const EpisodeLog& log) {
  ++counts_.episodes;
  if (!log.complete) ++counts_.incomplete_episodes;
  for (const auto& turn : log.turns) {
    ++counts_.turns;
    counts_.correct_turns += turn.correct;
    if (turn.action.kind == AgentAction::Kind::Query) {
      ++counts_.queries;
      counts_.correct_queries += turn.correct;
    } else {
      ++counts_.answers;
      counts_.correct_answers += turn.correct;
      counts_.guesses += turn.guess;
    }
    // A missing explanation is scored as the empty prediction.
    const UStarRecord predicted = turn.action.explanation.value_or(UStarRecord{});
    answers_.add(predicted.possible_answers, turn.truth.possible_answers);
    variables_.add(predicted.relevant_variables, turn.truth.relevant_variables);
  }
}

void MetricsAccumulator::merge(const MetricsAccumulator& other) {
  auto& c = counts_;
  const auto& o = other.counts_;
  c.episodes += o.episodes;
  c.incomplete_episodes += o.incomplete_episodes;
  c.turns += o.turns;
  c.correct_turns += o.correct_turns;
  c.queries += o.queries;
  c.correct_queries += o.correct_queries;
  c.answers += o.answers;
  c.correct_answers += o.correct_answers;
  c.guesses += o.guesses;
  answers_.merge(other.answers_);
  variables_.merge(other.variables_);
}

MetricsReport MetricsAccumulator::report() const {
  MetricsReport r = counts_;
  r.explanation.possible_answers = answers_.report();
  r.explanation.relevant_variables = variables_.report();
  r.explanation.macro_f1 =
      0.5 * (r.explanation.possible_answers.f1 + r.explanation.relevant_variables.f1);
  return r;
}

MetricsReport score_episodes(const std::vector<EpisodeLog>& logs) {
  MetricsAccumulator acc;
  for (const auto& log : logs) acc.add(log);
  return acc.report();
}

double interaction_accuracy(const std::vector<EpisodeLog>& logs) {
  return score_episodes(logs).interaction_accuracy();
}

ExplanationScores explanation_accuracy(const std::vector<EpisodeLog>& logs) {
  return score_episodes(logs).explanation;
}

namespace {

nlohmann::ordered_json score_json(const ScoreReport& s) {
  return {{"precision", s.precision},
          {"recall", s.recall},
          {"f1", s.f1},
          {"support", s.support},
          {"exact_matches", s.exact_matches}};
}

}  // namespace

std::string metrics_record(const MetricsReport& r) {
  nlohmann::ordered_json j;
  j["episodes"] = r.episodes;
  j["incomplete_episodes"] = r.incomplete_episodes;
  j["turns"] = r.turns;
  j["interaction_accuracy"] = r.interaction_accuracy();
  j["query_accuracy"] = r.query_accuracy();
  j["answer_accuracy"] = r.answer_accuracy();
  j["guess_rate"] = r.guess_rate();
  j["possible_answers"] = score_json(r.explanation.possible_answers);
  j["relevant_variables"] = score_json(r.explanation.relevant_variables);
  j["macro_f1"] = r.explanation.macro_f1;
  return j.dump();
}

std::string metrics_table(const MetricsReport& r) {
  std::ostringstream out;
  char line[128];
  auto row = [&](const char* label, double value) {
    std::snprintf(line, sizeof line, "%-28s %8.4f\n", label, value);
    out << line;
  };
  auto count = [&](const char* label, std::size_t value) {
    std::snprintf(line, sizeof line, "%-28s %8zu\n", label, value);
    out << line;
  };
  count("episodes", r.episodes);
  count("incomplete episodes", r.incomplete_episodes);
  count("turns", r.turns);
  row("interaction accuracy", r.interaction_accuracy());
  row("query accuracy", r.query_accuracy());
  row("answer accuracy", r.answer_accuracy());
  row("guess rate", r.guess_rate());
  std::snprintf(line, sizeof line, "%-28s %8s %8s %8s %8s\n", "explanation", "P", "R", "F1", "exact");
  out << line;
  auto scores = [&](const char* label, const ScoreReport& s) {
    std::snprintf(line, sizeof line, "%-28s %8.4f %8.4f %8.4f %8.4f\n", label, s.precision,
                  s.recall, s.f1, s.exact_match_rate());
    out << line;
  };
  scores("  possible answers", r.explanation.possible_answers);
  scores("  relevant variables", r.explanation.relevant_variables);
  row("  macro F1", r.explanation.macro_f1);
  return out.str();
}

}  // namespace eqraq
