#pragma once

// Sentence surface forms for problems, and the line-per-record dataset
// format.
//
// Dataset files start with a header line
//   {"format":"eqraq-dataset","version":1}
// followed by one JSON object per line, fields in this order:
//   problem_id, persons, rooms, objects, variables, context, events,
//   question, ground_truth, text, annotations

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "eqraq/model.hpp"

namespace eqraq {

struct RenderedProblem {
  std::vector<std::string> context_sentences;
  std::vector<std::string> event_sentences;
  std::string question_sentence;

  /// Context then events, the order they are told.
  std::vector<std::string> story() const;
  bool operator==(const RenderedProblem&) const = default;
};

struct Annotations {
  NameSet initial_possible_answers;
  NameSet initial_relevant_variables;
  std::size_t depth = 0;
  bool operator==(const Annotations&) const = default;
};

struct DatasetRecord {
  std::string problem_id;
  Problem problem;
  RenderedProblem text;
  Annotations annotations;
  bool operator==(const DatasetRecord&) const = default;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& message)
      : Error("sentence " + std::to_string(position) + ": " + message), position_(position) {}
  /// 1-based index of the offending sentence.
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class DecodeError : public Error {
 public:
  DecodeError(std::size_t line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

RenderedProblem render_problem(const Problem& problem);

/// Inverse of render_problem. The question may appear with or without its
/// question mark and must be the last sentence. Entity lists follow first
/// mention.
Problem parse_problem(const std::vector<std::string>& sentences,
                      const std::optional<Assignment>& ground_truth = std::nullopt);

inline constexpr int kDatasetFormatVersion = 1;

std::string dataset_header();
/// Throws DecodeError unless `line` is a header this build understands.
void check_dataset_header(const std::string& line);

std::string encode_record(const DatasetRecord& record);
DatasetRecord decode_record(const std::string& line, std::size_t line_number = 1);

/// Builds a record with freshly rendered text and computed annotations.
DatasetRecord make_record(std::string problem_id, Problem problem);

/// Reads a whole dataset file. Throws DecodeError with the offending line.
std::vector<DatasetRecord> read_dataset(std::istream& in);

}  // namespace eqraq
