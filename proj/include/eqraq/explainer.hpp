#pragma once

// The two explanation channels the User sends back: U, natural-language
// feedback on the agent's last action, and U*, the state explanation
// (possible answers + relevant variables).
//
// Feedback text is a pure function of FeedbackPayload; the template catalog
// lives in render_feedback and is the wire contract.

#include <optional>
#include <string>
#include <vector>

#include "eqraq/inference.hpp"
#include "eqraq/model.hpp"

namespace eqraq {

struct UStarRecord {
  NameSet possible_answers;
  NameSet relevant_variables;
  bool operator==(const UStarRecord&) const = default;
};

enum class FeedbackKind { HelpfulQuery, NotInProblemQuery, IrrelevantQuery, AnswerExact, AnswerGuess };

std::string to_string(FeedbackKind kind);
/// Inverse of to_string. Throws Error on unknown names.
FeedbackKind feedback_kind_from_string(const std::string& name);

struct FeedbackPayload {
  Question question;
  Name variable;                        // queries
  std::optional<Name> revealed_value;   // queries on occurring variables
  std::optional<EliminationTrace> trace;  // helpful queries
  /// Irrelevant queries: persons the variable provably is not (the
  /// protagonist, or whoever picks up the protagonist object). Empty when
  /// the exclusion does not hold.
  std::vector<Name> excluded;
  Name answered_room;                   // answers
  bool correct = false;
  Name correct_answer;
  std::vector<Name> open_variables;     // guesses
  std::vector<Name> open_answers;       // guesses, in the order they are read
  bool operator==(const FeedbackPayload&) const = default;
};

struct UFeedback {
  FeedbackKind kind = FeedbackKind::NotInProblemQuery;
  std::string text;
  FeedbackPayload payload;
};

std::string render_feedback(FeedbackKind kind, const FeedbackPayload& payload);

/// Any name may be queried. Names that are not occurring variables yield
/// NotInProblemQuery.
UFeedback explain_query(const Problem& problem, const KnowledgeState& revealed,
                        const Name& queried_variable);

/// `answered_room` must be a declared room; throws Error otherwise.
UFeedback explain_answer(const Problem& problem, const KnowledgeState& revealed,
                         const Name& answered_room);

UStarRecord state_explanation(const Problem& problem, const KnowledgeState& revealed);

/// "Possible Answers: Porch, Boudoir; Relevant Variables: $V0"
std::string render_ustar(const Problem& problem, const UStarRecord& record);

/// "$V0 is Silvia."
std::string render_reveal(const Name& variable, const Name& person);

}  // namespace eqraq
