#pragma once

// Story-world semantics and exact inference over the hidden variables.
//
// The public entry points (infer, possible_answers, relevant_variables,
// elimination_trace, depth) run a depth-first search that assigns each
// variable at its first Move, branching only over the persons standing in
// the source room. The `reference` namespace holds the exhaustive
// persons^variables enumeration; the two must agree exactly.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "eqraq/model.hpp"

namespace eqraq {

/// Corrupt input: no assignment extending the knowledge state is consistent.
class InferenceError : public Error {
 public:
  using Error::Error;
};

struct ObjectPlace {
  std::optional<Name> holder;
  Name room;
  bool operator==(const ObjectPlace&) const = default;
};

struct Violation {
  std::size_t event_index = 0;
  std::string reason;
};

struct Outcome {
  bool consistent = false;
  std::map<Name, Name> final_location;
  std::map<Name, ObjectPlace> final_holder;
  std::optional<Violation> violation;
};

struct InferenceResult {
  NameSet possible_answers;
  NameSet relevant_variables;
  std::optional<Name> answer_known;
};

struct EliminationTrace {
  Name variable;
  Name value;
  NameSet removed_answers;
  NameSet removed_referents;
  bool operator==(const EliminationTrace&) const = default;
};

/// Everything the explainer needs about one knowledge state.
struct Analysis {
  NameSet possible_answers;
  /// Per unrevealed occurring variable: consistent value -> answers reachable
  /// with that value.
  std::map<Name, std::map<Name, NameSet>> answers_by_value;

  NameSet relevant_variables() const;
  /// Persons the variable may still denote.
  NameSet referents(const Name& variable) const;
  InferenceResult result() const;
};

/// Simulates the story under a total assignment. Throws Error if the
/// assignment misses a declared variable.
Outcome execute(const Problem& problem, const Assignment& assignment);

/// The protagonist's room in a consistent outcome.
Name answer_of(const Problem& problem, const Outcome& outcome);

/// Exhaustive: every total assignment extending `revealed` that executes
/// consistently.
std::vector<Assignment> consistent_assignments(const Problem& problem,
                                               const KnowledgeState& revealed);

Analysis analyze(const Problem& problem, const KnowledgeState& revealed);
InferenceResult infer(const Problem& problem, const KnowledgeState& revealed);
NameSet possible_answers(const Problem& problem, const KnowledgeState& revealed);
NameSet relevant_variables(const Problem& problem,
                           const KnowledgeState& revealed);

/// What revealing `variable = value` removes. `value` must be the ground
/// truth and `variable` unrevealed.
EliminationTrace elimination_trace(const Problem& problem,
                                   const KnowledgeState& revealed,
                                   const Name& variable, const Name& value);

/// The variable the canonical oracle asks about next: the lexicographically
/// smallest relevant one, falling back to the smallest unrevealed occurring
/// variable when nothing is relevant but the answer is still open.
std::optional<Name> canonical_query(const Problem& problem,
                                    const KnowledgeState& revealed,
                                    const InferenceResult& state);

/// Queries the canonical oracle needs before the answer is determined.
/// Throws InferenceError if the oracle gets stuck (open answer, nothing
/// relevant) or would exceed the number of variables.
std::size_t depth(const Problem& problem);

namespace reference {

NameSet possible_answers(const Problem& problem, const KnowledgeState& revealed);
NameSet relevant_variables(const Problem& problem,
                           const KnowledgeState& revealed);

}  // namespace reference

}  // namespace eqraq
