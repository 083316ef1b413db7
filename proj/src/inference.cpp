#include "eqraq/inference.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <unordered_map>

namespace eqraq {

// ---------------------------------------------------------------------------
// Direct simulation over names. This is the semantics; everything else is
// checked against it.

Outcome execute(const Problem& problem, const Assignment& assignment) {
  for (const auto& var : problem.variables) {
    if (!assignment.count(var)) throw Error("execute: assignment misses variable " + var);
  }

  Outcome out;
  std::map<Name, Name> location;
  std::map<Name, Name> object_room;  // rooms of objects nobody holds
  std::map<Name, Name> holder;
  for (const auto& fact : problem.context) {
    if (const auto* p = std::get_if<PersonIn>(&fact))
      location[p->person] = p->room;
    else
      object_room[std::get<ObjectIn>(fact).object] = std::get<ObjectIn>(fact).room;
  }

  auto stop = [&](std::size_t index, std::string reason) {
    out.consistent = false;
    out.violation = Violation{index, std::move(reason)};
    return out;
  };

  for (std::size_t i = 0; i < problem.events.size(); ++i) {
    if (const auto* move = std::get_if<Move>(&problem.events[i])) {
      const Name actor =
          is_variable_name(move->actor) ? assignment.at(move->actor) : move->actor;
      auto it = location.find(actor);
      if (it == location.end()) return stop(i, actor + " has no known location");
      if (it->second != move->from)
        return stop(i, actor + " is in the " + it->second + ", not the " + move->from);
      it->second = move->to;
    } else {
      const auto& pick = std::get<Pickup>(problem.events[i]);
      auto actor_at = location.find(pick.actor);
      if (actor_at == location.end()) return stop(i, pick.actor + " has no known location");
      std::optional<Name> where;
      if (auto h = holder.find(pick.object); h != holder.end())
        where = location.at(h->second);
      else if (auto r = object_room.find(pick.object); r != object_room.end())
        where = r->second;
      else
        where = actor_at->second;  // first pickup fixes an unstated start
      if (*where != actor_at->second)
        return stop(i, pick.actor + " is not where the " + pick.object + " is");
      holder[pick.object] = pick.actor;
      object_room.erase(pick.object);
    }
  }

  out.consistent = true;
  out.final_location = location;
  for (const auto& object : problem.objects) {
    if (auto h = holder.find(object); h != holder.end())
      out.final_holder[object] = ObjectPlace{h->second, location.at(h->second)};
    else if (auto r = object_room.find(object); r != object_room.end())
      out.final_holder[object] = ObjectPlace{std::nullopt, r->second};
  }
  return out;
}

Name answer_of(const Problem& problem, const Outcome& outcome) {
  const auto& q = problem.question;
  if (q.kind == Question::Kind::Person) return outcome.final_location.at(q.protagonist);
  return outcome.final_holder.at(q.protagonist).room;
}

namespace {

void check_revealed(const Problem& problem, const KnowledgeState& revealed) {
  for (const auto& [var, person] : revealed.revealed) {
    if (!contains(problem.variables, var))
      throw Error("knowledge state names undeclared variable " + var);
    if (!contains(problem.persons, person))
      throw Error("knowledge state maps " + var + " to undeclared person " + person);
  }
}

}  // namespace

std::vector<Assignment> consistent_assignments(const Problem& problem,
                                               const KnowledgeState& revealed) {
  check_revealed(problem, revealed);
  std::vector<Name> free;
  for (const auto& var : problem.variables) {
    if (!revealed.revealed.count(var)) free.push_back(var);
  }

  std::vector<Assignment> out;
  if (problem.persons.empty() && !free.empty()) return out;
  std::vector<std::size_t> digits(free.size(), 0);
  while (true) {
    Assignment sigma = revealed.revealed;
    for (std::size_t i = 0; i < free.size(); ++i) sigma[free[i]] = problem.persons[digits[i]];
    if (execute(problem, sigma).consistent) out.push_back(std::move(sigma));

    std::size_t k = 0;
    while (k < digits.size() && ++digits[k] == problem.persons.size()) digits[k++] = 0;
    if (k == digits.size()) break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Event-driven search over an index-compiled copy of the problem.

namespace {

using Mask = std::uint64_t;

struct CompiledEvent {
  bool is_move = true;
  int actor = -1;  // person index, or variable index when actor_is_variable
  bool actor_is_variable = false;
  int from = -1;
  int to = -1;
  int object = -1;
};

struct Compiled {
  std::vector<Name> persons;
  std::vector<Name> rooms;
  std::vector<Name> variables;  // occurring, lexicographic
  std::vector<int> start_room;
  std::vector<int> object_room;
  std::vector<CompiledEvent> events;
  bool object_question = false;
  int protagonist = -1;
};

int index_in(const std::unordered_map<Name, int>& ids, const Name& n) {
  auto it = ids.find(n);
  if (it == ids.end()) throw Error("inference: undeclared name " + n);
  return it->second;
}

Compiled compile(const Problem& problem) {
  if (problem.rooms.size() > 64) throw Error("inference supports at most 64 rooms");
  Compiled c;
  c.persons = problem.persons;
  c.rooms = problem.rooms;
  auto occurring = variables_of(problem);
  c.variables.assign(occurring.begin(), occurring.end());

  std::unordered_map<Name, int> person_id, room_id, object_id, var_id;
  for (std::size_t i = 0; i < c.persons.size(); ++i) person_id[c.persons[i]] = int(i);
  for (std::size_t i = 0; i < c.rooms.size(); ++i) room_id[c.rooms[i]] = int(i);
  for (std::size_t i = 0; i < problem.objects.size(); ++i) object_id[problem.objects[i]] = int(i);
  for (std::size_t i = 0; i < c.variables.size(); ++i) var_id[c.variables[i]] = int(i);

  c.start_room.assign(c.persons.size(), -1);
  c.object_room.assign(problem.objects.size(), -1);
  for (const auto& fact : problem.context) {
    if (const auto* p = std::get_if<PersonIn>(&fact))
      c.start_room[index_in(person_id, p->person)] = index_in(room_id, p->room);
    else {
      const auto& o = std::get<ObjectIn>(fact);
      c.object_room[index_in(object_id, o.object)] = index_in(room_id, o.room);
    }
  }
  for (const auto& event : problem.events) {
    CompiledEvent e;
    if (const auto* m = std::get_if<Move>(&event)) {
      e.actor_is_variable = is_variable_name(m->actor);
      e.actor = e.actor_is_variable ? index_in(var_id, m->actor) : index_in(person_id, m->actor);
      e.from = index_in(room_id, m->from);
      e.to = index_in(room_id, m->to);
    } else {
      const auto& pick = std::get<Pickup>(event);
      e.is_move = false;
      e.actor = index_in(person_id, pick.actor);
      e.object = index_in(object_id, pick.object);
    }
    c.events.push_back(e);
  }
  c.object_question = problem.question.kind == Question::Kind::Object;
  c.protagonist = c.object_question ? index_in(object_id, problem.question.protagonist)
                                    : index_in(person_id, problem.question.protagonist);
  return c;
}

struct WorldState {
  std::vector<int> location;
  std::vector<int> holder;
  std::vector<int> object_room;
};

struct Search {
  const Compiled& c;
  std::vector<int> binding;  // per occurring variable, -1 when open
  std::vector<int> revealed;
  Mask answers = 0;
  // [variable][person] -> answers with that binding
  std::vector<std::vector<Mask>> by_value;

  Search(const Compiled& compiled, std::vector<int> known)
      : c(compiled),
        binding(known),
        revealed(std::move(known)),
        by_value(c.variables.size(), std::vector<Mask>(c.persons.size(), 0)) {}

  void run() {
    WorldState s{c.start_room, std::vector<int>(c.object_room.size(), -1), c.object_room};
    visit(0, s);
  }

  void leaf(const WorldState& s) {
    int room;
    if (!c.object_question) {
      room = s.location[c.protagonist];
    } else {
      int h = s.holder[c.protagonist];
      room = h >= 0 ? s.location[h] : s.object_room[c.protagonist];
    }
    if (room < 0) return;
    Mask bit = Mask{1} << room;
    answers |= bit;
    for (std::size_t v = 0; v < binding.size(); ++v) by_value[v][binding[v]] |= bit;
  }

  bool apply(const CompiledEvent& e, int person, WorldState& s) {
    if (e.is_move) {
      if (s.location[person] != e.from) return false;
      s.location[person] = e.to;
      return true;
    }
    int where;
    if (s.holder[e.object] >= 0)
      where = s.location[s.holder[e.object]];
    else if (s.object_room[e.object] >= 0)
      where = s.object_room[e.object];
    else
      where = s.location[person];
    if (where != s.location[person] || where < 0) return false;
    s.holder[e.object] = person;
    s.object_room[e.object] = -1;
    return true;
  }

  void visit(std::size_t i, WorldState& s) {
    if (i == c.events.size()) {
      leaf(s);
      return;
    }
    const auto& e = c.events[i];
    if (!e.actor_is_variable || binding[e.actor] >= 0) {
      int person = e.actor_is_variable ? binding[e.actor] : e.actor;
      WorldState next = s;
      if (apply(e, person, next)) visit(i + 1, next);
      return;
    }
    for (int p = 0; p < int(c.persons.size()); ++p) {
      if (s.location[p] != e.from) continue;
      binding[e.actor] = p;
      WorldState next = s;
      apply(e, p, next);
      visit(i + 1, next);
    }
    binding[e.actor] = -1;
  }
};

std::vector<int> compile_revealed(const Compiled& c, const Problem& problem,
                                  const KnowledgeState& revealed) {
  check_revealed(problem, revealed);
  std::vector<int> known(c.variables.size(), -1);
  for (std::size_t v = 0; v < c.variables.size(); ++v) {
    auto it = revealed.revealed.find(c.variables[v]);
    if (it == revealed.revealed.end()) continue;
    known[v] = int(std::find(c.persons.begin(), c.persons.end(), it->second) - c.persons.begin());
  }
  return known;
}

NameSet rooms_of(const Compiled& c, Mask mask) {
  NameSet out;
  for (std::size_t r = 0; r < c.rooms.size(); ++r) {
    if (mask & (Mask{1} << r)) out.insert(c.rooms[r]);
  }
  return out;
}

}  // namespace

NameSet Analysis::relevant_variables() const {
  NameSet out;
  for (const auto& [var, values] : answers_by_value) {
    for (const auto& [person, answers] : values) {
      if (answers.size() < possible_answers.size()) {
        out.insert(var);
        break;
      }
    }
  }
  return out;
}

NameSet Analysis::referents(const Name& variable) const {
  NameSet out;
  if (auto it = answers_by_value.find(variable); it != answers_by_value.end()) {
    for (const auto& [person, answers] : it->second) out.insert(person);
  }
  return out;
}

InferenceResult Analysis::result() const {
  InferenceResult r;
  r.possible_answers = possible_answers;
  r.relevant_variables = relevant_variables();
  if (possible_answers.size() == 1) r.answer_known = *possible_answers.begin();
  return r;
}

Analysis analyze(const Problem& problem, const KnowledgeState& revealed) {
  const auto c = compile(problem);
  Search search(c, compile_revealed(c, problem, revealed));
  search.run();
  if (search.answers == 0)
    throw InferenceError("no consistent assignment extends the knowledge state");

  Analysis a;
  a.possible_answers = rooms_of(c, search.answers);
  for (std::size_t v = 0; v < c.variables.size(); ++v) {
    if (search.revealed[v] >= 0) continue;
    auto& values = a.answers_by_value[c.variables[v]];
    for (std::size_t p = 0; p < c.persons.size(); ++p) {
      if (search.by_value[v][p]) values[c.persons[p]] = rooms_of(c, search.by_value[v][p]);
    }
  }
  return a;
}

InferenceResult infer(const Problem& problem, const KnowledgeState& revealed) {
  return analyze(problem, revealed).result();
}

NameSet possible_answers(const Problem& problem, const KnowledgeState& revealed) {
  return analyze(problem, revealed).possible_answers;
}

NameSet relevant_variables(const Problem& problem, const KnowledgeState& revealed) {
  return analyze(problem, revealed).relevant_variables();
}

EliminationTrace elimination_trace(const Problem& problem, const KnowledgeState& revealed,
                                   const Name& variable, const Name& value) {
  auto truth = problem.ground_truth.find(variable);
  if (truth == problem.ground_truth.end() || truth->second != value)
    throw Error("elimination_trace: " + variable + " = " + value + " is not the ground truth");
  if (revealed.revealed.count(variable))
    throw Error("elimination_trace: " + variable + " is already revealed");

  const auto before = analyze(problem, revealed);
  KnowledgeState after_state = revealed;
  after_state.revealed[variable] = value;
  const auto after = possible_answers(problem, after_state);

  EliminationTrace trace{variable, value, {}, {}};
  std::set_difference(before.possible_answers.begin(), before.possible_answers.end(),
                      after.begin(), after.end(),
                      std::inserter(trace.removed_answers, trace.removed_answers.end()));
  for (const auto& person : before.referents(variable)) {
    if (person != value) trace.removed_referents.insert(person);
  }
  return trace;
}

std::optional<Name> canonical_query(const Problem& problem, const KnowledgeState& revealed,
                                    const InferenceResult& state) {
  if (state.possible_answers.size() <= 1) return std::nullopt;
  if (!state.relevant_variables.empty()) return *state.relevant_variables.begin();
  for (const auto& var : variables_of(problem)) {
    if (!revealed.revealed.count(var)) return var;
  }
  return std::nullopt;
}

std::size_t depth(const Problem& problem) {
  const auto c = compile(problem);
  std::vector<int> known(c.variables.size(), -1);
  std::vector<int> truth(c.variables.size(), -1);
  for (std::size_t v = 0; v < c.variables.size(); ++v) {
    auto it = problem.ground_truth.find(c.variables[v]);
    if (it == problem.ground_truth.end())
      throw Error("depth: ground truth misses " + c.variables[v]);
    truth[v] = int(std::find(c.persons.begin(), c.persons.end(), it->second) - c.persons.begin());
  }

  for (std::size_t queries = 0;; ++queries) {
    Search search(c, known);
    search.run();
    if (search.answers == 0) throw InferenceError("depth: ground truth is inconsistent");
    const int open = std::popcount(search.answers);
    if (open == 1) return queries;
    if (queries >= c.variables.size())
      throw InferenceError("depth: oracle exceeded the number of variables");

    int pick = -1;
    for (std::size_t v = 0; v < c.variables.size() && pick < 0; ++v) {
      if (known[v] >= 0) continue;
      for (Mask m : search.by_value[v]) {
        if (m && std::popcount(m) < open) {
          pick = int(v);
          break;
        }
      }
    }
    if (pick < 0) throw InferenceError("depth: answer open but no variable is relevant");
    known[pick] = truth[pick];
  }
}

namespace reference {

NameSet possible_answers(const Problem& problem, const KnowledgeState& revealed) {
  NameSet out;
  for (const auto& sigma : consistent_assignments(problem, revealed))
    out.insert(answer_of(problem, execute(problem, sigma)));
  if (out.empty()) throw InferenceError("no consistent assignment extends the knowledge state");
  return out;
}

NameSet relevant_variables(const Problem& problem, const KnowledgeState& revealed) {
  const auto current = reference::possible_answers(problem, revealed);
  NameSet out;
  for (const auto& var : variables_of(problem)) {
    if (revealed.revealed.count(var)) continue;
    for (const auto& person : problem.persons) {
      KnowledgeState k = revealed;
      k.revealed[var] = person;
      NameSet narrowed;
      for (const auto& sigma : consistent_assignments(problem, k))
        narrowed.insert(answer_of(problem, execute(problem, sigma)));
      if (!narrowed.empty() && narrowed.size() < current.size()) {
        out.insert(var);
        break;
      }
    }
  }
  return out;
}

}  // namespace reference

}  // namespace eqraq
