#include "eqraq/wording.hpp"

#include <algorithm>
#include <cctype>

namespace eqraq::wording {

std::string lower(std::string_view word) {
  std::string out(word);
  for (auto& ch : out) ch = char(std::tolower(static_cast<unsigned char>(ch)));
  return out;
}

std::string capitalize(std::string_view word) {
  std::string out = lower(word);
  if (!out.empty()) out[0] = char(std::toupper(static_cast<unsigned char>(out[0])));
  return out;
}

std::string join(const std::vector<std::string>& items, const std::string& last_word,
                 const std::string& glue) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += (i + 1 == items.size()) ? " " + last_word + " " : ", ";
    if (i > 0) out += glue;
    out += items[i];
  }
  return out;
}

std::string protagonist_phrase(const Question& question) {
  if (question.kind == Question::Kind::Person) return question.protagonist;
  return "the " + lower(question.protagonist);
}

std::vector<Name> answers_in_display_order(const NameSet& answers,
                                           const std::optional<Name>& initial_room) {
  std::vector<Name> out;
  if (initial_room && answers.count(*initial_room)) out.push_back(*initial_room);
  for (const auto& room : answers) {
    if (!initial_room || room != *initial_room) out.push_back(room);
  }
  return out;
}

}  // namespace eqraq::wording
