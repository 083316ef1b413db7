#pragma once

// The User side of an episode. A Session holds one problem and what the
// agent has learned so far; each step() grades one agent action, answers
// queries with ground-truth values, and hands back feedback plus, depending
// on the mode, learning targets or rewards. An Answer ends the episode.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eqraq/codec.hpp"
#include "eqraq/explainer.hpp"
#include "eqraq/model.hpp"

namespace eqraq {

/// Wire-level failures. `code` is what goes into ERROR{code}.
class ProtocolError : public Error {
 public:
  ProtocolError(std::string code, const std::string& detail)
      : Error(detail), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

enum class ModeKind { SupervisedTrain, RLTrain, Eval };

struct Mode {
  ModeKind kind = ModeKind::Eval;
  bool emit_ustar = true;
  bool operator==(const Mode&) const = default;
};

std::string to_string(ModeKind kind);
/// "supervised", "rl", "eval". Throws Error on anything else.
ModeKind mode_kind_from_string(const std::string& name);

struct AgentAction {
  enum class Kind { Query, Answer };
  Kind kind = Kind::Query;
  Name name;
  std::optional<UStarRecord> explanation;

  static AgentAction query(Name variable, std::optional<UStarRecord> e = std::nullopt) {
    return {Kind::Query, std::move(variable), std::move(e)};
  }
  static AgentAction answer(Name room, std::optional<UStarRecord> e = std::nullopt) {
    return {Kind::Answer, std::move(room), std::move(e)};
  }
  bool operator==(const AgentAction&) const = default;
};

struct Targets {
  AgentAction action;
  UStarRecord explanation;
  bool operator==(const Targets&) const = default;
};

struct Rewards {
  double action = 0.0;
  double explanation = 0.0;
  bool operator==(const Rewards&) const = default;
};

/// Action rewards. The defaults make following the targets the best policy.
struct RewardTable {
  double correct_exact_answer = 1.0;
  double incorrect_exact_answer = -1.0;
  double correct_guess = 0.25;
  double incorrect_guess = -1.0;
  double relevant_query = 0.2;
  double irrelevant_query = -0.2;
  double not_in_problem_query = -0.5;
};

struct Observation {
  std::string problem_id;
  std::vector<std::string> sentences;
  std::string question;
  std::vector<Name> persons;
  std::vector<Name> rooms;
  std::vector<Name> variables;
  std::optional<UStarRecord> ustar;
};

struct FeedbackBundle {
  UFeedback feedback;
  std::optional<std::string> reveal;  // "$V0 is Silvia." for occurring queries
  std::optional<UStarRecord> ustar;   // post-action state
  std::optional<Targets> targets;     // for the state the agent acted on
  std::optional<Rewards> rewards;
  bool done = false;
};

struct TurnRecord {
  AgentAction action;  // as normalised by the session
  Targets target;
  UStarRecord truth;   // U* of the state the agent acted on
  FeedbackKind kind = FeedbackKind::NotInProblemQuery;
  std::string u_text;
  bool correct = false;
  bool guess = false;
};

struct EpisodeLog {
  std::string problem_id;
  std::vector<TurnRecord> turns;
  bool complete = false;
};

class Session {
 public:
  /// Throws Error if the problem fails validation.
  static std::pair<Session, Observation> start(const DatasetRecord& record, Mode mode,
                                               RewardTable rewards = {});
  static std::pair<Session, Observation> start(const Problem& problem, Mode mode,
                                               RewardTable rewards = {});

  /// Throws ProtocolError("finished") after the episode ended and
  /// ProtocolError("bad_entity") for malformed or undeclared names; the
  /// session is unchanged in both cases.
  FeedbackBundle step(const AgentAction& action);

  Targets ground_truth_targets() const;
  Rewards compute_rewards(const AgentAction& action) const;
  /// Throws ProtocolError("unfinished") before the episode ended.
  EpisodeLog episode_log() const;
  /// Log of whatever happened so far, marked incomplete if not done.
  EpisodeLog partial_log() const;

  const Problem& problem() const { return problem_; }
  const KnowledgeState& knowledge() const { return knowledge_; }
  const Mode& mode() const { return mode_; }
  std::size_t turn() const { return log_.turns.size(); }
  bool done() const { return done_; }

 private:
  Session(Problem problem, std::string id, Mode mode, RewardTable rewards);

  AgentAction normalise(const AgentAction& action) const;
  UFeedback feedback_for(const AgentAction& normalised) const;
  double action_reward(const UFeedback& feedback) const;

  Problem problem_;
  Mode mode_;
  RewardTable reward_table_;
  KnowledgeState knowledge_;
  EpisodeLog log_;
  bool done_ = false;
};

Targets targets_for(const Problem& problem, const KnowledgeState& knowledge,
                    const UStarRecord& state);

}  // namespace eqraq
