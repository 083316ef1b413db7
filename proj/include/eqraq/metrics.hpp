#pragma once

// User-side scoring: interaction accuracy over agent actions and set-overlap
// scores between predicted and true U* records. Explanations are compared as
// sets of entity names; order and multiplicity never matter.

#include <cstddef>
#include <string>
#include <vector>

#include "eqraq/model.hpp"

namespace eqraq {

struct EpisodeLog;

using EntityBag = NameSet;

struct ScoreReport {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;        // number of scored comparisons
  std::size_t exact_matches = 0;  // comparisons with predicted == truth
  double exact_match_rate() const { return support ? double(exact_matches) / double(support) : 0.0; }
};

/// Empty vs empty scores 1; empty on exactly one side scores 0.
ScoreReport set_scores(const EntityBag& predicted, const EntityBag& truth);

/// Associative accumulator; merge() is how parallel scorers combine.
class ScoreAccumulator {
 public:
  void add(const EntityBag& predicted, const EntityBag& truth);
  void merge(const ScoreAccumulator& other);
  ScoreReport report() const;

 private:
  double precision_sum_ = 0.0;
  double recall_sum_ = 0.0;
  double f1_sum_ = 0.0;
  std::size_t count_ = 0;
  std::size_t exact_ = 0;
};

struct ExplanationScores {
  ScoreReport possible_answers;
  ScoreReport relevant_variables;
  double macro_f1 = 0.0;
};

struct MetricsReport {
  std::size_t episodes = 0;
  std::size_t incomplete_episodes = 0;
  std::size_t turns = 0;
  std::size_t correct_turns = 0;
  std::size_t queries = 0;
  std::size_t correct_queries = 0;
  std::size_t answers = 0;
  std::size_t correct_answers = 0;
  std::size_t guesses = 0;
  ExplanationScores explanation;

  double interaction_accuracy() const;
  double query_accuracy() const;
  double answer_accuracy() const;
  double guess_rate() const;  // fraction of answers that were guesses
};

class MetricsAccumulator {
 public:
  void add(const EpisodeLog& log);
  void merge(const MetricsAccumulator& other);
  MetricsReport report() const;

 private:
  MetricsReport counts_;
  ScoreAccumulator answers_;
  ScoreAccumulator variables_;
};

double interaction_accuracy(const std::vector<EpisodeLog>& logs);
ExplanationScores explanation_accuracy(const std::vector<EpisodeLog>& logs);
MetricsReport score_episodes(const std::vector<EpisodeLog>& logs);

/// Single-line JSON record (same family as dataset lines).
std::string metrics_record(const MetricsReport& report);
/// Aligned table for terminals.
std::string metrics_table(const MetricsReport& report);

}  // namespace eqraq
