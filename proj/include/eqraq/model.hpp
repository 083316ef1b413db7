#pragma once

// Problem representation shared by every other module: the story world
// (persons, rooms, objects), ambiguous events, the challenge question and
// the hidden ground truth behind each variable.

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace eqraq {

using Name = std::string;
using NameSet = std::set<Name>;

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PersonIn {
  Name person;
  Name room;
  bool operator==(const PersonIn&) const = default;
};

struct ObjectIn {
  Name object;
  Name room;
  bool operator==(const ObjectIn&) const = default;
};

using ContextFact = std::variant<PersonIn, ObjectIn>;

/// The actor is a person or a variable ("$V0"). Variables only ever stand in
/// for movers.
struct Move {
  Name actor;
  Name from;
  Name to;
  bool operator==(const Move&) const = default;
};

struct Pickup {
  Name actor;
  Name object;
  bool operator==(const Pickup&) const = default;
};

using Event = std::variant<Move, Pickup>;

struct Question {
  enum class Kind { Person, Object };
  Kind kind = Kind::Person;
  Name protagonist;
  bool operator==(const Question&) const = default;
};

/// variable -> person; total or partial depending on use.
using Assignment = std::map<Name, Name>;

/// What the agent has been told so far. Only ever holds ground-truth values.
struct KnowledgeState {
  Assignment revealed;
  bool operator==(const KnowledgeState&) const = default;
};

/// Entity lists keep declaration order (rendering depends on it); they are
/// treated as sets everywhere else.
struct Problem {
  std::vector<Name> persons;
  std::vector<Name> rooms;
  std::vector<Name> objects;
  std::vector<Name> variables;
  std::vector<ContextFact> context;
  std::vector<Event> events;
  Question question;
  Assignment ground_truth;

  bool operator==(const Problem&) const = default;
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> violations;
};

/// Checks the structural invariants and that the story executes
/// consistently under the ground truth. Never throws.
ValidationReport validate_problem(const Problem& problem);

/// Variables that actually occur as Move actors (a subset of the declared
/// ones).
NameSet variables_of(const Problem& problem);

bool is_variable_name(const std::string& name);

/// Syntactically acceptable entity token: letters, digits, '_' (variables
/// carry a leading '$').
bool is_entity_token(const std::string& name);

/// Initial room of the protagonist when it is stated in the context.
std::optional<Name> initial_room_of_protagonist(const Problem& problem);

/// Persons who pick up the given object somewhere in the story.
NameSet pickup_actors(const Problem& problem, const Name& object);

bool contains(const std::vector<Name>& names, const Name& name);

}  // namespace eqraq
