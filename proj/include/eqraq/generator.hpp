#pragma once

// Procedural problems with a controlled difficulty (depth).
//
// Construct-then-obfuscate: place everyone, walk a consistent story, pick a
// protagonist, then hide the actors of some moves behind fresh variables.
// Only moves leaving a room with at least two persons are hidden, so every
// variable is genuinely ambiguous. Candidates whose depth misses the target,
// or whose oracle trajectory stalls with no relevant variable, are rejected.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eqraq/codec.hpp"
#include "eqraq/model.hpp"

namespace eqraq {

struct GenParams {
  std::size_t n_persons = 5;
  std::size_t n_rooms = 4;
  std::size_t n_objects = 1;
  std::size_t n_events = 6;
  std::size_t n_variables = 1;
  Question::Kind question_type = Question::Kind::Person;
  std::size_t target_depth = 1;
  std::uint64_t seed = 0;
  std::size_t max_rejects = 20000;
};

/// Parameters that can never produce a problem. The message names the
/// violated constraint.
class ParamError : public Error {
 public:
  using Error::Error;
};

class GenerationError : public Error {
 public:
  using Error::Error;
};

/// Throws ParamError.
void check_params(const GenParams& params);

/// Deterministic in `params` (including the seed). Throws GenerationError
/// after max_rejects failed candidates.
std::pair<Problem, Annotations> generate(const GenParams& params);

struct DatasetPlan {
  GenParams params;
  std::size_t count = 0;
  /// When set, per-record target depth cycles through
  /// [params.target_depth, max_depth].
  std::optional<std::size_t> max_depth;
  unsigned threads = 1;
};

struct DatasetStats {
  std::size_t records = 0;
  double seconds = 0.0;
};

/// Record i uses seed params.seed + i; output is identical for any thread
/// count. Writes the dataset header followed by one line per record.
DatasetStats generate_dataset(const DatasetPlan& plan, std::ostream& sink);

std::string problem_id_for(std::uint64_t seed, std::size_t index);

/// Name pools shipped in data/.
const std::vector<std::string>& person_pool();
const std::vector<std::string>& room_pool();
const std::vector<std::string>& object_pool();

}  // namespace eqraq
