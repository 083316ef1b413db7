#include <gtest/gtest.h>

#include "eqraq/metrics.hpp"
#include "eqraq/simulator.hpp"

using namespace eqraq;

TEST(SetScores, Identical) {
  const auto s = set_scores({"Porch", "Boudoir"}, {"Porch", "Boudoir"});
  EXPECT_DOUBLE_EQ(s.f1, 1.0);
  EXPECT_EQ(s.exact_matches, 1u);
}

TEST(SetScores, HalfRecall) {
  const auto s = set_scores({"Porch"}, {"Porch", "Boudoir"});
  EXPECT_DOUBLE_EQ(s.precision, 1.0);
  EXPECT_DOUBLE_EQ(s.recall, 0.5);
  EXPECT_DOUBLE_EQ(s.f1, 2.0 / 3.0);
  EXPECT_EQ(s.exact_matches, 0u);
}

TEST(SetScores, PartialOverlap) {
  const auto s = set_scores({"A", "B"}, {"B", "C"});
  EXPECT_DOUBLE_EQ(s.precision, 0.5);
  EXPECT_DOUBLE_EQ(s.recall, 0.5);
  EXPECT_DOUBLE_EQ(s.f1, 0.5);
}

TEST(SetScores, EmptyConventions) {
  EXPECT_DOUBLE_EQ(set_scores({}, {}).f1, 1.0);
  EXPECT_DOUBLE_EQ(set_scores({"A"}, {}).f1, 0.0);
  EXPECT_DOUBLE_EQ(set_scores({}, {"A"}).f1, 0.0);
  EXPECT_DOUBLE_EQ(set_scores({"A"}, {"B"}).f1, 0.0);
}

TEST(ScoreAccumulator, MeanAndMerge) {
  ScoreAccumulator a, b;
  a.add({"A"}, {"A"});
  b.add({"A"}, {"A", "B"});
  a.merge(b);
  const auto r = a.report();
  EXPECT_EQ(r.support, 2u);
  EXPECT_DOUBLE_EQ(r.f1, (1.0 + 2.0 / 3.0) / 2.0);
  EXPECT_DOUBLE_EQ(r.exact_match_rate(), 0.5);
}

namespace {

TurnRecord turn(AgentAction action, bool correct, UStarRecord truth, bool guess = false) {
  TurnRecord t;
  t.action = std::move(action);
  t.truth = std::move(truth);
  t.correct = correct;
  t.guess = guess;
  return t;
}

}  // namespace

TEST(Metrics, EpisodeCounts) {
  const UStarRecord s0{{"Porch", "Boudoir"}, {"$V0"}};
  const UStarRecord s1{{"Porch"}, {}};
  EpisodeLog good{"a", {turn(AgentAction::query("$V0", s0), true, s0),
                        turn(AgentAction::answer("Porch", s1), true, s1)},
                  true};
  EpisodeLog guess{"b", {turn(AgentAction::answer("Porch"), false, s0, true)}, true};

  const auto r = score_episodes({good, guess});
  EXPECT_EQ(r.episodes, 2u);
  EXPECT_EQ(r.turns, 3u);
  EXPECT_DOUBLE_EQ(r.interaction_accuracy(), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(r.query_accuracy(), 1.0);
  EXPECT_DOUBLE_EQ(r.answer_accuracy(), 0.5);
  EXPECT_DOUBLE_EQ(r.guess_rate(), 0.5);
  // The guess turn has no explanation: scored as empty prediction.
  EXPECT_DOUBLE_EQ(r.explanation.possible_answers.f1, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(r.explanation.relevant_variables.f1, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(interaction_accuracy({good}), 1.0);
  EXPECT_DOUBLE_EQ(explanation_accuracy({good}).macro_f1, 1.0);
}

TEST(Metrics, RecordAndTable) {
  const auto r = score_episodes({});
  const auto line = metrics_record(r);
  EXPECT_EQ(line.find('\n'), std::string::npos);
  EXPECT_NE(line.find("\"interaction_accuracy\""), std::string::npos);
  EXPECT_NE(metrics_table(r).find("interaction accuracy"), std::string::npos);
}
