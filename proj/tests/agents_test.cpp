#include <gtest/gtest.h>

#include "eqraq/agents.hpp"
#include "eqraq/codec.hpp"
#include "eqraq/metrics.hpp"
#include "support/fixtures.hpp"

using namespace eqraq;
using namespace eqraq::testing;

namespace {

const Mode kEval{ModeKind::Eval, true};

}  // namespace

TEST(OracleAgent, FollowsUStar) {
  EXPECT_EQ(oracle_act(UStarRecord{{"Porch", "Boudoir"}, {"$V0", "$V2"}}).name, "$V0");
  const auto a = oracle_act(UStarRecord{{"Porch"}, {}});
  EXPECT_EQ(a, AgentAction::answer("Porch", UStarRecord{{"Porch"}, {}}));
  EXPECT_THROW(oracle_act(std::nullopt), Error);
}

TEST(OracleAgent, SolvesExamples) {
  for (const auto& p : {porch_problem(), attic_problem(), gift_problem(), variable_free_problem()}) {
    const auto record = make_record("x", p);
    OracleAgent oracle;
    const auto log = run_episode(record, kEval, oracle);
    ASSERT_TRUE(log.complete);
    EXPECT_EQ(log.turns.size(), record.annotations.depth + 1);
    const auto r = score_episodes({log});
    EXPECT_DOUBLE_EQ(r.interaction_accuracy(), 1.0);
    EXPECT_DOUBLE_EQ(r.explanation.macro_f1, 1.0);
  }
}

TEST(EmptyAgent, SameActionsNoExplanation) {
  const auto record = make_record("porch", porch_problem());
  EmptyExplanationAgent agent;
  const auto log = run_episode(record, kEval, agent);
  const auto r = score_episodes({log});
  EXPECT_DOUBLE_EQ(r.interaction_accuracy(), 1.0);
  EXPECT_DOUBLE_EQ(r.explanation.possible_answers.f1, 0.0);
  // Turn two has an empty relevant set, which the empty prediction matches.
  EXPECT_DOUBLE_EQ(r.explanation.relevant_variables.f1, 0.5);
}

TEST(GuesserAgent, AnswersImmediately) {
  const auto record = make_record("attic", attic_problem());
  GuesserAgent agent;
  const auto log = run_episode(record, kEval, agent);
  ASSERT_EQ(log.turns.size(), 1u);
  EXPECT_TRUE(log.turns[0].guess);
  EXPECT_DOUBLE_EQ(score_episodes({log}).interaction_accuracy(), 0.0);

  Mode blind{ModeKind::Eval, false};
  GuesserAgent no_ustar;
  EXPECT_EQ(run_episode(record, blind, no_ustar).turns.at(0).action.name, "Attic");
}

TEST(RandomAgent, DeterministicAndValid) {
  const auto record = make_record("gift", gift_problem());
  auto run = [&](std::uint64_t seed) {
    RandomAgent agent(seed);
    return run_episode(record, kEval, agent);
  };
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto a = run(seed), b = run(seed);
    ASSERT_EQ(a.turns.size(), b.turns.size());
    EXPECT_TRUE(a.complete);
    for (std::size_t i = 0; i < a.turns.size(); ++i) EXPECT_EQ(a.turns[i].action, b.turns[i].action);
  }
}

TEST(Agents, Factory) {
  for (const char* name : {"oracle", "random", "guesser", "empty"}) EXPECT_NE(make_agent(name, 1), nullptr);
  EXPECT_THROW(make_agent("genius", 1), Error);
}

TEST(Agents, MaxTurnsLeavesEpisodeIncomplete) {
  class Stubborn : public Agent {
   public:
    void begin(const Observation&) override {}
    AgentAction act() override { return AgentAction::query("$V0"); }
    void observe(const FeedbackBundle&) override {}
  } agent;
  const auto log = run_episode(make_record("porch", porch_problem()), kEval, agent, 5);
  EXPECT_FALSE(log.complete);
  EXPECT_EQ(log.turns.size(), 5u);
}
