#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "eqraq/codec.hpp"
#include "eqraq/inference.hpp"
#include "support/fixtures.hpp"
#include "support/random_problems.hpp"

using namespace eqraq;
using namespace eqraq::testing;

namespace {

std::vector<std::string> whole(const RenderedProblem& r) {
  auto s = r.story();
  s.push_back(r.question_sentence);
  return s;
}

}  // namespace

TEST(Render, Porch) {
  const auto r = render_problem(porch_problem());
  EXPECT_EQ(r.context_sentences, (std::vector<std::string>{"Silvia is in the porch.",
                                                           "Charles is in the cellar.",
                                                           "Maria is in the porch."}));
  EXPECT_EQ(r.event_sentences.back(), "$V0 goes from the porch to the boudoir.");
  EXPECT_EQ(r.question_sentence, "Where is Maria?");
}

TEST(Render, GiftAggregatesAdjacentFacts) {
  const auto r = render_problem(gift_problem());
  auto expected = gift_sentences();
  EXPECT_EQ(whole(r), expected);
}

TEST(Render, NonAdjacentFactsStaySeparate) {
  Problem p = variable_free_problem();
  p.persons.push_back("Lea");
  p.context.push_back(PersonIn{"Lea", "Kitchen"});
  EXPECT_EQ(render_problem(p).context_sentences,
            (std::vector<std::string>{"Anna is in the kitchen.", "Tom is in the garden.",
                                      "Lea is in the kitchen."}));
}

TEST(Parse, WorkedExamples) {
  EXPECT_EQ(parse_problem(porch_sentences(), Assignment{{"$V0", "Silvia"}}), porch_problem());
  EXPECT_EQ(parse_problem(attic_sentences(), Assignment{{"$V4", "Charles"}}), attic_problem());
  EXPECT_EQ(parse_problem(gift_sentences(), gift_problem().ground_truth), gift_problem());
}

TEST(Parse, BadSentencePosition) {
  auto s = porch_sentences();
  s[3] = "Maria teleports home.";
  try {
    parse_problem(s);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 4u);
  }
}

TEST(Parse, QuestionMustBeLast) {
  auto s = porch_sentences();
  s.push_back("Silvia is in the porch.");
  EXPECT_THROW(parse_problem(s), ParseError);
  s = porch_sentences();
  s.pop_back();
  try {
    parse_problem(s);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), s.size() + 1);
  }
}

TEST(Parse, RoundTripOnRandomProblems) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    const auto p = random_problem(rng);
    const auto back = parse_problem(whole(render_problem(p)), p.ground_truth);
    // Entity lists follow first mention, so compare what the story says.
    EXPECT_EQ(render_problem(back), render_problem(p));
    EXPECT_EQ(back.context, p.context);
    EXPECT_EQ(back.events, p.events);
    EXPECT_EQ(back.question, p.question);
  }
}

TEST(Dataset, RecordRoundTrip) {
  const auto rec = make_record("porch", porch_problem());
  EXPECT_EQ(rec.annotations.depth, 1u);
  EXPECT_EQ(rec.annotations.initial_possible_answers, (NameSet{"Porch", "Boudoir"}));
  const auto line = encode_record(rec);
  EXPECT_EQ(line.find('\n'), std::string::npos);
  EXPECT_EQ(line.rfind("{\"problem_id\":\"porch\",\"persons\":", 0), 0u);
  EXPECT_EQ(decode_record(line), rec);
}

TEST(Dataset, RandomRecordsRoundTrip) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 200; ++i) {
    auto p = random_problem(rng);
    DatasetRecord r;
    r.problem_id = "r" + std::to_string(i);
    r.text = render_problem(p);
    r.annotations.initial_possible_answers = possible_answers(p, {});
    r.problem = std::move(p);
    EXPECT_EQ(decode_record(encode_record(r)), r);
  }
}

TEST(Dataset, TruncatedLine) {
  auto line = encode_record(make_record("porch", porch_problem()));
  line.resize(line.size() / 2);
  try {
    decode_record(line, 17);
    FAIL();
  } catch (const DecodeError& e) {
    EXPECT_EQ(e.line(), 17u);
  }
}

TEST(Dataset, MissingField) {
  EXPECT_THROW(decode_record("{\"problem_id\":\"x\"}"), DecodeError);
}

TEST(Dataset, HeaderChecks) {
  EXPECT_EQ(dataset_header(), "{\"format\":\"eqraq-dataset\",\"version\":1}");
  EXPECT_NO_THROW(check_dataset_header(dataset_header()));
  EXPECT_THROW(check_dataset_header("{\"format\":\"eqraq-dataset\",\"version\":2}"), DecodeError);
  EXPECT_THROW(check_dataset_header("not json"), DecodeError);
}

TEST(Dataset, ReadReportsOffendingLine) {
  std::stringstream in;
  in << dataset_header() << '\n' << encode_record(make_record("a", porch_problem())) << '\n'
     << "{broken\n";
  try {
    read_dataset(in);
    FAIL();
  } catch (const DecodeError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  std::stringstream ok;
  ok << dataset_header() << '\n' << encode_record(make_record("a", attic_problem())) << '\n';
  EXPECT_EQ(read_dataset(ok).size(), 1u);
}
