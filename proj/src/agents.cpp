#include "eqraq/agents.hpp"

#include "eqraq/inference.hpp"

namespace eqraq {

AgentAction oracle_act(const std::optional<UStarRecord>& ustar) {
  if (!ustar) throw Error("oracle agent needs U* in its observations (enable emit_ustar)");
  if (ustar->possible_answers.size() == 1)
    return AgentAction::answer(*ustar->possible_answers.begin(), *ustar);
  if (!ustar->relevant_variables.empty())
    return AgentAction::query(*ustar->relevant_variables.begin(), *ustar);
  throw Error("oracle agent: answer still open but U* lists no relevant variable");
}

void OracleAgent::begin(const Observation& observation) { ustar_ = observation.ustar; }

AgentAction OracleAgent::act() { return oracle_act(ustar_); }

void OracleAgent::observe(const FeedbackBundle& feedback) { ustar_ = feedback.ustar; }

AgentAction EmptyExplanationAgent::act() {
  auto a = OracleAgent::act();
  a.explanation = UStarRecord{};
  return a;
}

AgentAction RandomAgent::act() {
  const auto& vars = observation_.variables;
  const auto& rooms = observation_.rooms;
  auto below = [&](std::size_t n) {
    return std::size_t((static_cast<unsigned __int128>(rng_()) * n) >> 64);
  };
  UStarRecord guess;
  for (const auto& r : rooms)
    if (below(2)) guess.possible_answers.insert(r);
  for (const auto& v : vars)
    if (below(2)) guess.relevant_variables.insert(v);

  const std::size_t k = below(vars.size() + rooms.size());
  if (k < vars.size()) return AgentAction::query(vars[k], guess);
  return AgentAction::answer(rooms[k - vars.size()], guess);
}

AgentAction GuesserAgent::act() {
  if (observation_.ustar && !observation_.ustar->possible_answers.empty())
    return AgentAction::answer(*observation_.ustar->possible_answers.begin());
  return AgentAction::answer(observation_.rooms.front());
}

std::unique_ptr<Agent> make_agent(const std::string& name, std::uint64_t seed) {
  if (name == "oracle") return std::make_unique<OracleAgent>();
  if (name == "random") return std::make_unique<RandomAgent>(seed);
  if (name == "guesser") return std::make_unique<GuesserAgent>();
  if (name == "empty") return std::make_unique<EmptyExplanationAgent>();
  throw Error("unknown agent \"" + name + "\" (expected oracle, random, guesser or empty)");
}

EpisodeLog run_episode(const DatasetRecord& record, Mode mode, Agent& agent,
                       std::size_t max_turns) {
  auto [session, observation] = Session::start(record, mode);
  agent.begin(observation);
  while (!session.done() && session.turn() < max_turns) agent.observe(session.step(agent.act()));
  return session.partial_log();
}

}  // namespace eqraq
