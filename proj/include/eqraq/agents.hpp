#pragma once

// Built-in agents used for calibration and end-to-end tests.
//
//   oracle   follows the ground-truth policy read off U*, echoes U*
//   random   uniform over Query(declared variable) and Answer(declared room),
//            with a random subset of entities as its explanation
//   guesser  answers at once, never explains
//   empty    oracle actions with an empty explanation

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>

#include "eqraq/simulator.hpp"

namespace eqraq {

class Agent {
 public:
  virtual ~Agent() = default;
  virtual void begin(const Observation& observation) = 0;
  virtual AgentAction act() = 0;
  virtual void observe(const FeedbackBundle& feedback) = 0;
};

/// Throws Error when no U* is available.
AgentAction oracle_act(const std::optional<UStarRecord>& ustar);

class OracleAgent : public Agent {
 public:
  void begin(const Observation& observation) override;
  AgentAction act() override;
  void observe(const FeedbackBundle& feedback) override;

 protected:
  std::optional<UStarRecord> ustar_;
};

class EmptyExplanationAgent : public OracleAgent {
 public:
  AgentAction act() override;
};

class RandomAgent : public Agent {
 public:
  explicit RandomAgent(std::uint64_t seed) : rng_(seed) {}
  void begin(const Observation& observation) override { observation_ = observation; }
  AgentAction act() override;
  void observe(const FeedbackBundle&) override {}

 private:
  std::mt19937_64 rng_;
  Observation observation_;
};

class GuesserAgent : public Agent {
 public:
  void begin(const Observation& observation) override { observation_ = observation; }
  AgentAction act() override;
  void observe(const FeedbackBundle&) override {}

 private:
  Observation observation_;
};

/// "oracle", "random", "guesser", "empty". Throws Error for other names.
std::unique_ptr<Agent> make_agent(const std::string& name, std::uint64_t seed);

/// Runs one episode to completion (or until `max_turns`, leaving it
/// incomplete).
EpisodeLog run_episode(const DatasetRecord& record, Mode mode, Agent& agent,
                       std::size_t max_turns = 1000);

}  // namespace eqraq
