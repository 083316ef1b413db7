#include "eqraq/simulator.hpp"

#include "eqraq/inference.hpp"
#include "eqraq/metrics.hpp"
#include "eqraq/wording.hpp"

namespace eqraq {

std::string to_string(ModeKind kind) {
  switch (kind) {
    case ModeKind::SupervisedTrain: return "supervised";
    case ModeKind::RLTrain: return "rl";
    case ModeKind::Eval: return "eval";
  }
  return "eval";
}

ModeKind mode_kind_from_string(const std::string& name) {
  if (name == "supervised") return ModeKind::SupervisedTrain;
  if (name == "rl") return ModeKind::RLTrain;
  if (name == "eval") return ModeKind::Eval;
  throw Error("unknown mode \"" + name + "\" (expected supervised, rl or eval)");
}

Targets targets_for(const Problem& problem, const KnowledgeState& knowledge,
                    const UStarRecord& state) {
  Targets t;
  t.explanation = state;
  InferenceResult r{state.possible_answers, state.relevant_variables, std::nullopt};
  if (auto var = canonical_query(problem, knowledge, r))
    t.action = AgentAction::query(*var);
  else
    t.action = AgentAction::answer(*state.possible_answers.begin());
  return t;
}

namespace {

/// Case-insensitive lookup among declared names.
std::optional<Name> resolve(const std::vector<Name>& declared, const Name& name) {
  const auto key = wording::lower(name);
  for (const auto& d : declared) {
    if (wording::lower(d) == key) return d;
  }
  return std::nullopt;
}

}  // namespace

Session::Session(Problem problem, std::string id, Mode mode, RewardTable rewards)
    : problem_(std::move(problem)), mode_(mode), reward_table_(rewards) {
  log_.problem_id = std::move(id);
}

std::pair<Session, Observation> Session::start(const DatasetRecord& record, Mode mode,
                                               RewardTable rewards) {
  const auto report = validate_problem(record.problem);
  if (!report.ok) throw Error("invalid problem " + record.problem_id + ": " + report.violations.front());

  Session session(record.problem, record.problem_id, mode, rewards);
  Observation obs;
  obs.problem_id = record.problem_id;
  obs.sentences = record.text.story();
  obs.question = record.text.question_sentence;
  obs.persons = record.problem.persons;
  obs.rooms = record.problem.rooms;
  obs.variables = record.problem.variables;
  if (mode.emit_ustar) obs.ustar = state_explanation(session.problem_, session.knowledge_);
  return {std::move(session), std::move(obs)};
}

std::pair<Session, Observation> Session::start(const Problem& problem, Mode mode,
                                               RewardTable rewards) {
  DatasetRecord record;
  record.problem = problem;
  record.text = render_problem(problem);
  return start(record, mode, rewards);
}

AgentAction Session::normalise(const AgentAction& action) const {
  AgentAction out = action;
  if (action.kind == AgentAction::Kind::Query) {
    if (!is_variable_name(action.name))
      throw ProtocolError("bad_entity", "\"" + action.name + "\" is not a variable name");
    if (auto declared = resolve(problem_.variables, action.name)) out.name = *declared;
  } else {
    auto room = resolve(problem_.rooms, action.name);
    if (!room) throw ProtocolError("bad_entity", "\"" + action.name + "\" is not a room of this problem");
    out.name = *room;
  }
  return out;
}

UFeedback Session::feedback_for(const AgentAction& a) const {
  if (a.kind == AgentAction::Kind::Query) return explain_query(problem_, knowledge_, a.name);
  return explain_answer(problem_, knowledge_, a.name);
}

double Session::action_reward(const UFeedback& fb) const {
  const auto& t = reward_table_;
  switch (fb.kind) {
    case FeedbackKind::HelpfulQuery: return t.relevant_query;
    case FeedbackKind::IrrelevantQuery: return t.irrelevant_query;
    case FeedbackKind::NotInProblemQuery: return t.not_in_problem_query;
    case FeedbackKind::AnswerExact:
      return fb.payload.correct ? t.correct_exact_answer : t.incorrect_exact_answer;
    case FeedbackKind::AnswerGuess: return fb.payload.correct ? t.correct_guess : t.incorrect_guess;
  }
  return 0.0;
}

Targets Session::ground_truth_targets() const {
  if (done_) throw ProtocolError("finished", "episode already ended");
  return targets_for(problem_, knowledge_, state_explanation(problem_, knowledge_));
}

Rewards Session::compute_rewards(const AgentAction& action) const {
  const auto a = normalise(action);
  Rewards r;
  r.action = action_reward(feedback_for(a));
  if (a.explanation) {
    const auto truth = state_explanation(problem_, knowledge_);
    r.explanation = 0.5 * (set_scores(a.explanation->possible_answers, truth.possible_answers).f1 +
                           set_scores(a.explanation->relevant_variables, truth.relevant_variables).f1);
  }
  return r;
}

FeedbackBundle Session::step(const AgentAction& action) {
  if (done_) throw ProtocolError("finished", "episode already ended");
  const auto a = normalise(action);

  const auto before = state_explanation(problem_, knowledge_);
  TurnRecord turn;
  turn.action = a;
  turn.truth = before;
  turn.target = targets_for(problem_, knowledge_, before);

  FeedbackBundle bundle;
  bundle.feedback = feedback_for(a);
  if (mode_.kind == ModeKind::SupervisedTrain) bundle.targets = turn.target;
  if (mode_.kind == ModeKind::RLTrain) bundle.rewards = compute_rewards(a);

  turn.kind = bundle.feedback.kind;
  turn.u_text = bundle.feedback.text;
  if (a.kind == AgentAction::Kind::Query) {
    turn.correct = before.relevant_variables.count(a.name) > 0;
    if (const auto& value = bundle.feedback.payload.revealed_value) {
      bundle.reveal = render_reveal(a.name, *value);
      knowledge_.revealed[a.name] = *value;
    }
  } else {
    turn.guess = before.possible_answers.size() > 1;
    turn.correct = !turn.guess && bundle.feedback.payload.correct;
    done_ = true;
    log_.complete = true;
  }
  log_.turns.push_back(std::move(turn));

  if (mode_.emit_ustar) bundle.ustar = state_explanation(problem_, knowledge_);
  bundle.done = done_;
  return bundle;
}

EpisodeLog Session::episode_log() const {
  if (!done_) throw ProtocolError("unfinished", "episode has not ended");
  return log_;
}

EpisodeLog Session::partial_log() const { return log_; }

}  // namespace eqraq
