#pragma once

// Surface-form helpers shared by the sentence renderer and the explanation
// templates.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eqraq/model.hpp"

namespace eqraq::wording {

/// "porch" for Porch: how article nouns read inside a sentence.
std::string lower(std::string_view word);

/// "Porch" for porch.
std::string capitalize(std::string_view word);

/// "A", "A or B", "A, B or C". `glue` is inserted before every item but the
/// first, e.g. "the " gives "the a, the b or the c" when the caller prefixes
/// the first one itself.
std::string join(const std::vector<std::string>& items, const std::string& last_word,
                 const std::string& glue = "");

/// How the question's protagonist reads in running text: "Maria" or
/// "the gift".
std::string protagonist_phrase(const Question& question);

/// Possible answers in reading order: the protagonist's starting room first,
/// the rest lexicographic.
std::vector<Name> answers_in_display_order(const NameSet& answers,
                                           const std::optional<Name>& initial_room);

}  // namespace eqraq::wording
