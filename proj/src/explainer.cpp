#include "eqraq/explainer.hpp"

#include <algorithm>
#include <cctype>

#include "eqraq/wording.hpp"

namespace eqraq {

std::string to_string(FeedbackKind kind) {
  switch (kind) {
    case FeedbackKind::HelpfulQuery: return "helpful_query";
    case FeedbackKind::NotInProblemQuery: return "not_in_problem_query";
    case FeedbackKind::IrrelevantQuery: return "irrelevant_query";
    case FeedbackKind::AnswerExact: return "answer_exact";
    case FeedbackKind::AnswerGuess: return "answer_guess";
  }
  return "unknown";
}

FeedbackKind feedback_kind_from_string(const std::string& name) {
  for (auto kind : {FeedbackKind::HelpfulQuery, FeedbackKind::NotInProblemQuery,
                    FeedbackKind::IrrelevantQuery, FeedbackKind::AnswerExact,
                    FeedbackKind::AnswerGuess}) {
    if (to_string(kind) == name) return kind;
  }
  throw Error("unknown feedback kind \"" + name + "\"");
}

namespace {

std::string sentence_start(std::string phrase) {
  if (!phrase.empty()) phrase[0] = char(std::toupper(static_cast<unsigned char>(phrase[0])));
  return phrase;
}

std::vector<std::string> lowered(const NameSet& rooms) {
  std::vector<std::string> out;
  for (const auto& r : rooms) out.push_back(wording::lower(r));
  return out;
}

std::string helpful_inference(const FeedbackPayload& p) {
  const auto& trace = *p.trace;
  const std::string who = sentence_start(wording::protagonist_phrase(p.question));
  const std::string rooms = "in the " + wording::join(lowered(trace.removed_answers), "or", "the ");
  const std::vector<std::string> others(trace.removed_referents.begin(),
                                        trace.removed_referents.end());
  if (others.empty()) {
    if (trace.removed_answers.empty())
      return "We now know that " + trace.variable + " is " + trace.value + ".";
    return who + " can therefore not be " + rooms + ".";
  }
  std::string text = "We now know that " + trace.variable + " is " + trace.value +
                     ", and not " + wording::join(others, "or") + ".";
  if (!trace.removed_answers.empty()) text += " " + who + " can therefore not be " + rooms + ".";
  return text;
}

}  // namespace

std::string render_feedback(FeedbackKind kind, const FeedbackPayload& p) {
  const std::string who = wording::protagonist_phrase(p.question);
  switch (kind) {
    case FeedbackKind::HelpfulQuery:
      return "This query was helpful, since it allowed the following inference:\n" +
             helpful_inference(p);
    case FeedbackKind::NotInProblemQuery:
      return "This query was not helpful, since " + p.variable +
             " does not even occur in the problem.";
    case FeedbackKind::IrrelevantQuery:
      if (!p.excluded.empty())
        return "This query was not helpful, since " + wording::join(p.excluded, "or") +
               " cannot be " + p.variable + ".";
      return "This query was not helpful, since knowing " + p.variable +
             " cannot reduce the possible answers.";
    case FeedbackKind::AnswerExact:
      if (p.correct) return "This answer is correct.";
      return "This answer is incorrect. " + sentence_start(who) + " is in the " +
             wording::lower(p.correct_answer) + ".";
    case FeedbackKind::AnswerGuess: {
      const std::string been = p.question.kind == Question::Kind::Person
                                   ? " could still have been "
                                   : " could still have been carried by ";
      return "This was a guess, since " + who + been + wording::join(p.open_variables, "or") +
             ", and thereby in the " + wording::join(p.open_answers, "or", "in the ") +
             ".\nThis guess was " + (p.correct ? "correct" : "incorrect") + ".";
    }
  }
  return {};
}

UFeedback explain_query(const Problem& problem, const KnowledgeState& revealed,
                        const Name& queried_variable) {
  UFeedback fb;
  fb.payload.question = problem.question;
  fb.payload.variable = queried_variable;

  if (!variables_of(problem).count(queried_variable)) {
    fb.kind = FeedbackKind::NotInProblemQuery;
    fb.text = render_feedback(fb.kind, fb.payload);
    return fb;
  }

  const Name& value = problem.ground_truth.at(queried_variable);
  fb.payload.revealed_value = value;
  const auto analysis = analyze(problem, revealed);

  if (analysis.relevant_variables().count(queried_variable)) {
    fb.kind = FeedbackKind::HelpfulQuery;
    fb.payload.trace = elimination_trace(problem, revealed, queried_variable, value);
  } else {
    fb.kind = FeedbackKind::IrrelevantQuery;
    NameSet referents;
    if (auto known = revealed.revealed.find(queried_variable); known != revealed.revealed.end())
      referents.insert(known->second);
    else
      referents = analysis.referents(queried_variable);

    const auto& q = problem.question;
    if (q.kind == Question::Kind::Person) {
      if (!referents.count(q.protagonist)) fb.payload.excluded = {q.protagonist};
    } else {
      const auto carriers = pickup_actors(problem, q.protagonist);
      const bool disjoint = std::none_of(carriers.begin(), carriers.end(),
                                         [&](const Name& n) { return referents.count(n) > 0; });
      if (!carriers.empty() && disjoint)
        fb.payload.excluded.assign(carriers.begin(), carriers.end());
    }
  }
  fb.text = render_feedback(fb.kind, fb.payload);
  return fb;
}

UFeedback explain_answer(const Problem& problem, const KnowledgeState& revealed,
                         const Name& answered_room) {
  if (!contains(problem.rooms, answered_room))
    throw Error("explain_answer: undeclared room " + answered_room);

  UFeedback fb;
  fb.payload.question = problem.question;
  fb.payload.answered_room = answered_room;
  const auto analysis = analyze(problem, revealed);

  if (analysis.possible_answers.size() == 1) {
    fb.kind = FeedbackKind::AnswerExact;
    fb.payload.correct_answer = *analysis.possible_answers.begin();
  } else {
    fb.kind = FeedbackKind::AnswerGuess;
    fb.payload.correct_answer = answer_of(problem, execute(problem, problem.ground_truth));
    auto open = analysis.relevant_variables();
    if (open.empty()) {
      for (const auto& var : variables_of(problem))
        if (!revealed.revealed.count(var)) open.insert(var);
    }
    fb.payload.open_variables.assign(open.begin(), open.end());
    // Read as "could have been $V, and thereby in X, or (otherwise) in the
    // start room": the start room goes last here.
    auto order = wording::answers_in_display_order(analysis.possible_answers,
                                                   initial_room_of_protagonist(problem));
    if (!order.empty() && order.front() == initial_room_of_protagonist(problem))
      std::rotate(order.begin(), order.begin() + 1, order.end());
    fb.payload.open_answers = order;
  }
  fb.payload.correct = answered_room == fb.payload.correct_answer;
  fb.text = render_feedback(fb.kind, fb.payload);
  return fb;
}

UStarRecord state_explanation(const Problem& problem, const KnowledgeState& revealed) {
  auto result = infer(problem, revealed);
  return {std::move(result.possible_answers), std::move(result.relevant_variables)};
}

std::string render_ustar(const Problem& problem, const UStarRecord& record) {
  const auto answers = wording::answers_in_display_order(record.possible_answers,
                                                         initial_room_of_protagonist(problem));
  std::string text = "Possible Answers: ";
  for (std::size_t i = 0; i < answers.size(); ++i) text += (i ? ", " : "") + answers[i];
  text += "; Relevant Variables: ";
  if (record.relevant_variables.empty()) return text + "∅";
  bool first = true;
  for (const auto& var : record.relevant_variables) {
    text += (first ? "" : ", ") + var;
    first = false;
  }
  return text;
}

std::string render_reveal(const Name& variable, const Name& person) {
  return variable + " is " + person + ".";
}

}  // namespace eqraq
