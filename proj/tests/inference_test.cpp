#include <gtest/gtest.h>

#include <random>

#include "eqraq/inference.hpp"
#include "support/brute_force.hpp"
#include "support/fixtures.hpp"
#include "support/random_problems.hpp"

using namespace eqraq;
using namespace eqraq::testing;

TEST(Execute, PorchUnderMaria) {
  const auto out = execute(porch_problem(), {{"$V0", "Maria"}});
  ASSERT_TRUE(out.consistent);
  EXPECT_EQ(out.final_location.at("Maria"), "Boudoir");
  EXPECT_EQ(out.final_location.at("Charles"), "Terrace");
  EXPECT_EQ(answer_of(porch_problem(), out), "Boudoir");
}

TEST(Execute, PorchUnderCharlesBreaks) {
  const auto out = execute(porch_problem(), {{"$V0", "Charles"}});
  EXPECT_FALSE(out.consistent);
  ASSERT_TRUE(out.violation.has_value());
  EXPECT_EQ(out.violation->event_index, 2u);
}

TEST(Execute, MissingVariableThrows) {
  EXPECT_THROW(execute(porch_problem(), {}), Error);
}

TEST(Execute, GiftFollowsItsCarrier) {
  const auto p = gift_problem();
  const auto out = execute(p, p.ground_truth);
  ASSERT_TRUE(out.consistent);
  const auto& gift = out.final_holder.at("gift");
  EXPECT_EQ(gift.holder, "Hannah");
  EXPECT_EQ(gift.room, "Bank");
}

TEST(Inference, PorchConsistentAssignments) {
  const auto all = consistent_assignments(porch_problem(), {});
  ASSERT_EQ(all.size(), 2u);
  NameSet values;
  for (const auto& a : all) values.insert(a.at("$V0"));
  EXPECT_EQ(values, (NameSet{"Silvia", "Maria"}));
}

TEST(Inference, PorchInitialState) {
  const auto r = infer(porch_problem(), {});
  EXPECT_EQ(r.possible_answers, (NameSet{"Porch", "Boudoir"}));
  EXPECT_EQ(r.relevant_variables, (NameSet{"$V0"}));
  EXPECT_FALSE(r.answer_known.has_value());
}

TEST(Inference, PorchAfterReveal) {
  const auto r = infer(porch_problem(), {{{"$V0", "Silvia"}}});
  EXPECT_EQ(r.possible_answers, (NameSet{"Porch"}));
  EXPECT_TRUE(r.relevant_variables.empty());
  EXPECT_EQ(r.answer_known, "Porch");
}

TEST(Inference, AtticInitialState) {
  const auto r = infer(attic_problem(), {});
  EXPECT_EQ(r.possible_answers, (NameSet{"Attic", "Porch"}));
  EXPECT_EQ(r.relevant_variables, (NameSet{"$V4"}));
}

// Frozen from brute_answers / brute_relevant (checked below as well).
TEST(Inference, GiftInitialState) {
  const auto r = infer(gift_problem(), {});
  EXPECT_EQ(r.possible_answers, (NameSet{"Bank", "Park"}));
  EXPECT_EQ(r.relevant_variables, (NameSet{"$w"}));
  EXPECT_EQ(brute_answers(gift_problem(), {}), r.possible_answers);
  EXPECT_EQ(brute_relevant(gift_problem(), {}), r.relevant_variables);
}

TEST(Inference, VariableFreeIsKnown) {
  const auto r = infer(variable_free_problem(), {});
  EXPECT_EQ(r.answer_known, "Kitchen");
  EXPECT_EQ(depth(variable_free_problem()), 0u);
}

TEST(Inference, ReferenceRouteAgreesOnExamples) {
  for (const auto& p : {porch_problem(), attic_problem(), gift_problem()}) {
    EXPECT_EQ(reference::possible_answers(p, {}), possible_answers(p, {}));
    EXPECT_EQ(reference::relevant_variables(p, {}), relevant_variables(p, {}));
  }
}

TEST(Inference, InconsistentKnowledgeThrows) {
  EXPECT_THROW(infer(porch_problem(), {{{"$V0", "Charles"}}}), InferenceError);
}

TEST(Trace, PorchReveal) {
  const auto t = elimination_trace(porch_problem(), {}, "$V0", "Silvia");
  EXPECT_EQ(t.removed_answers, (NameSet{"Boudoir"}));
  EXPECT_EQ(t.removed_referents, (NameSet{"Maria"}));
}

TEST(Trace, RejectsNonTruthAndRevealed) {
  EXPECT_THROW(elimination_trace(porch_problem(), {}, "$V0", "Maria"), Error);
  EXPECT_THROW(elimination_trace(porch_problem(), {{{"$V0", "Silvia"}}}, "$V0", "Silvia"), Error);
}

TEST(Depth, Examples) {
  EXPECT_EQ(depth(porch_problem()), 1u);
  EXPECT_EQ(depth(attic_problem()), 1u);
}

TEST(Depth, GiftNeedsOneQuery) {
  // Revealing $w = Hannah pins the gift to the bank.
  EXPECT_EQ(infer(gift_problem(), {{{"$w", "Hannah"}}}).answer_known, "Bank");
  EXPECT_EQ(depth(gift_problem()), 1u);
}

TEST(CanonicalQuery, SmallestRelevantThenFallback) {
  const auto p = gift_problem();
  EXPECT_EQ(canonical_query(p, {}, infer(p, {})), "$w");
  const KnowledgeState known{{{"$w", "Hannah"}}};
  EXPECT_FALSE(canonical_query(p, known, infer(p, known)).has_value());
}

// Optimized route against the test-side brute force on random stories,
// including co-referring variables and unstated object starts.
TEST(Inference, MatchesBruteForceOnRandomProblems) {
  std::mt19937_64 rng(12345);
  std::size_t checked = 0;
  for (int i = 0; i < 600; ++i) {
    const auto p = random_problem(rng);
    ASSERT_TRUE(validate_problem(p).ok) << validate_problem(p).violations.front();
    KnowledgeState k;
    for (const auto& v : p.variables) {
      ASSERT_EQ(possible_answers(p, k), brute_answers(p, k.revealed));
      ASSERT_EQ(relevant_variables(p, k), brute_relevant(p, k.revealed));
      ASSERT_EQ(reference::possible_answers(p, k), brute_answers(p, k.revealed));
      ++checked;
      k.revealed[v] = p.ground_truth.at(v);
    }
  }
  EXPECT_GT(checked, 500u);
}
