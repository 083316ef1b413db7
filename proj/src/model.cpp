#include "eqraq/model.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "eqraq/inference.hpp"

namespace eqraq {

bool contains(const std::vector<Name>& names, const Name& name) {
  return std::find(names.begin(), names.end(), name) != names.end();
}

bool is_entity_token(const std::string& name) {
  if (name.empty()) return false;
  std::size_t start = name[0] == '$' ? 1 : 0;
  if (start == name.size()) return false;
  for (std::size_t i = start; i < name.size(); ++i) {
    auto c = static_cast<unsigned char>(name[i]);
    if (!std::isalnum(c) && c != '_') return false;
  }
  return true;
}

bool is_variable_name(const std::string& name) {
  return name.size() > 1 && name[0] == '$' && is_entity_token(name);
}

NameSet variables_of(const Problem& problem) {
  NameSet out;
  for (const auto& event : problem.events) {
    if (const auto* move = std::get_if<Move>(&event)) {
      if (is_variable_name(move->actor)) out.insert(move->actor);
    }
  }
  return out;
}

std::optional<Name> initial_room_of_protagonist(const Problem& problem) {
  const auto& q = problem.question;
  for (const auto& fact : problem.context) {
    if (q.kind == Question::Kind::Person) {
      if (const auto* p = std::get_if<PersonIn>(&fact); p && p->person == q.protagonist)
        return p->room;
    } else {
      if (const auto* o = std::get_if<ObjectIn>(&fact); o && o->object == q.protagonist)
        return o->room;
    }
  }
  return std::nullopt;
}

NameSet pickup_actors(const Problem& problem, const Name& object) {
  NameSet out;
  for (const auto& event : problem.events) {
    if (const auto* pick = std::get_if<Pickup>(&event); pick && pick->object == object)
      out.insert(pick->actor);
  }
  return out;
}

namespace {

class Checker {
 public:
  explicit Checker(const Problem& p) : p_(p) {}

  ValidationReport run() {
    check_names();
    check_context();
    check_events();
    check_question();
    check_ground_truth();
    if (report_.ok) check_execution();
    return std::move(report_);
  }

 private:
  void fail(std::string message) {
    report_.ok = false;
    report_.violations.push_back(std::move(message));
  }

  void check_names() {
    std::map<Name, std::string> kind_of;
    auto declare = [&](const std::vector<Name>& names, const std::string& kind) {
      for (const auto& n : names) {
        if (kind == "variable" ? !is_variable_name(n) : (!is_entity_token(n) || n[0] == '$'))
          fail("malformed " + kind + " name \"" + n + "\"");
        auto [it, fresh] = kind_of.emplace(n, kind);
        if (!fresh) {
          if (it->second == kind)
            fail(kind + " \"" + n + "\" declared twice");
          else
            fail("name \"" + n + "\" declared as both " + it->second + " and " + kind);
        }
      }
    };
    declare(p_.persons, "person");
    declare(p_.rooms, "room");
    declare(p_.objects, "object");
    declare(p_.variables, "variable");
  }

  void need(const std::vector<Name>& names, const Name& n, const std::string& kind,
            const std::string& where) {
    if (!contains(names, n)) fail(where + ": undeclared " + kind + " \"" + n + "\"");
  }

  void check_context() {
    std::map<Name, int> person_facts, object_facts;
    for (std::size_t i = 0; i < p_.context.size(); ++i) {
      const std::string where = "context fact " + std::to_string(i + 1);
      if (const auto* f = std::get_if<PersonIn>(&p_.context[i])) {
        need(p_.persons, f->person, "person", where);
        need(p_.rooms, f->room, "room", where);
        if (++person_facts[f->person] == 2)
          fail(where + ": person \"" + f->person + "\" placed more than once");
      } else {
        const auto& o = std::get<ObjectIn>(p_.context[i]);
        need(p_.objects, o.object, "object", where);
        need(p_.rooms, o.room, "room", where);
        if (++object_facts[o.object] == 2)
          fail(where + ": object \"" + o.object + "\" placed more than once");
      }
    }
    for (const auto& person : p_.persons) {
      if (!person_facts.count(person)) fail("person \"" + person + "\" has no starting room");
    }
    for (const auto& object : p_.objects) {
      if (!object_facts.count(object) && pickup_actors(p_, object).empty())
        fail("object \"" + object + "\" is never placed nor picked up");
    }
  }

  void check_events() {
    for (std::size_t i = 0; i < p_.events.size(); ++i) {
      const std::string where = "event " + std::to_string(i + 1);
      if (const auto* m = std::get_if<Move>(&p_.events[i])) {
        if (is_variable_name(m->actor))
          need(p_.variables, m->actor, "variable", where);
        else
          need(p_.persons, m->actor, "person", where);
        need(p_.rooms, m->from, "room", where);
        need(p_.rooms, m->to, "room", where);
        if (m->from == m->to) fail(where + ": moves from \"" + m->from + "\" to itself");
      } else {
        const auto& pick = std::get<Pickup>(p_.events[i]);
        if (is_variable_name(pick.actor))
          fail(where + ": pickup actor \"" + pick.actor + "\" must be a named person");
        else
          need(p_.persons, pick.actor, "person", where);
        need(p_.objects, pick.object, "object", where);
      }
    }
  }

  void check_question() {
    const auto& q = p_.question;
    if (q.kind == Question::Kind::Person)
      need(p_.persons, q.protagonist, "person", "question");
    else
      need(p_.objects, q.protagonist, "object", "question");
  }

  void check_ground_truth() {
    for (const auto& [var, person] : p_.ground_truth) {
      need(p_.variables, var, "variable", "ground truth");
      need(p_.persons, person, "person", "ground truth for " + var);
    }
    for (const auto& var : p_.variables) {
      if (!p_.ground_truth.count(var)) fail("ground truth misses variable \"" + var + "\"");
    }
  }

  void check_execution() {
    const auto outcome = execute(p_, p_.ground_truth);
    if (!outcome.consistent) {
      fail("ground truth is inconsistent at event " +
           std::to_string(outcome.violation->event_index + 1) + ": " +
           outcome.violation->reason);
    }
  }

  const Problem& p_;
  ValidationReport report_;
};

}  // namespace

ValidationReport validate_problem(const Problem& problem) { return Checker(problem).run(); }

}  // namespace eqraq
