#include "eqraq/codec.hpp"

#include <istream>
#include <regex>

#include <json.hpp>

#include "eqraq/inference.hpp"
#include "eqraq/wording.hpp"

namespace eqraq {

using ojson = nlohmann::ordered_json;

std::vector<std::string> RenderedProblem::story() const {
  auto out = context_sentences;
  out.insert(out.end(), event_sentences.begin(), event_sentences.end());
  return out;
}

// ---------------------------------------------------------------------------
// Sentences

RenderedProblem render_problem(const Problem& problem) {
  RenderedProblem out;
  const auto& ctx = problem.context;
  for (std::size_t i = 0; i < ctx.size();) {
    if (const auto* o = std::get_if<ObjectIn>(&ctx[i])) {
      out.context_sentences.push_back("The " + wording::lower(o->object) + " is in the " +
                                      wording::lower(o->room) + ".");
      ++i;
      continue;
    }
    // Adjacent persons sharing a room are told together.
    const Name room = std::get<PersonIn>(ctx[i]).room;
    std::vector<std::string> group;
    while (i < ctx.size()) {
      const auto* p = std::get_if<PersonIn>(&ctx[i]);
      if (!p || p->room != room) break;
      group.push_back(p->person);
      ++i;
    }
    out.context_sentences.push_back(wording::join(group, "and") +
                                    (group.size() == 1 ? " is" : " are") + " in the " +
                                    wording::lower(room) + ".");
  }
  for (const auto& event : problem.events) {
    if (const auto* m = std::get_if<Move>(&event)) {
      out.event_sentences.push_back(m->actor + " goes from the " + wording::lower(m->from) +
                                    " to the " + wording::lower(m->to) + ".");
    } else {
      const auto& pick = std::get<Pickup>(event);
      out.event_sentences.push_back(pick.actor + " picks up the " + wording::lower(pick.object) +
                                    ".");
    }
  }
  out.question_sentence = "Where is " + wording::protagonist_phrase(problem.question) + "?";
  return out;
}

namespace {

class ProblemBuilder {
 public:
  void person(const Name& n) { add(problem_.persons, n); }
  void room(const Name& n) { add(problem_.rooms, n); }
  void object(const Name& n) { add(problem_.objects, n); }
  void variable(const Name& n) { add(problem_.variables, n); }

  Problem& problem() { return problem_; }

 private:
  static void add(std::vector<Name>& list, const Name& n) {
    if (!contains(list, n)) list.push_back(n);
  }
  Problem problem_;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_names(const std::string& list) {
  static const std::regex sep(R"(, | and )");
  std::vector<std::string> out;
  for (std::sregex_token_iterator it(list.begin(), list.end(), sep, -1), end; it != end; ++it)
    out.push_back(*it);
  return out;
}

}  // namespace

Problem parse_problem(const std::vector<std::string>& sentences,
                      const std::optional<Assignment>& ground_truth) {
  static const std::regex question_re(R"(Where is (the )?(\w+)\s*\??)");
  static const std::regex object_in_re(R"([Tt]he (\w+) is in the (\w+)\.?)");
  static const std::regex persons_in_re(R"((\w+(?:(?:, | and )\w+)*) (?:is|are) in the (\w+)\.?)");
  static const std::regex move_re(R"((\$?\w+) goes from the (\w+) to the (\w+)\.?)");
  static const std::regex pickup_re(R"((\w+) picks up the (\w+)\.?)");

  ProblemBuilder b;
  auto& p = b.problem();
  bool seen_event = false;
  bool seen_question = false;

  for (std::size_t i = 0; i < sentences.size(); ++i) {
    const std::size_t pos = i + 1;
    const std::string s = trim(sentences[i]);
    if (s.empty()) continue;
    if (seen_question) throw ParseError(pos, "sentence after the question: \"" + s + "\"");
    std::smatch m;
    if (std::regex_match(s, m, question_re)) {
      seen_question = true;
      if (m[1].matched) {
        p.question = {Question::Kind::Object, wording::lower(m[2].str())};
        b.object(p.question.protagonist);
      } else {
        p.question = {Question::Kind::Person, m[2].str()};
        b.person(p.question.protagonist);
      }
    } else if (std::regex_match(s, m, object_in_re)) {
      if (seen_event) throw ParseError(pos, "context sentence after events: \"" + s + "\"");
      const Name object = wording::lower(m[1].str()), room = wording::capitalize(m[2].str());
      b.object(object);
      b.room(room);
      p.context.push_back(ObjectIn{object, room});
    } else if (std::regex_match(s, m, persons_in_re)) {
      if (seen_event) throw ParseError(pos, "context sentence after events: \"" + s + "\"");
      const Name room = wording::capitalize(m[2].str());
      const auto names = split_names(m[1].str());
      for (const auto& person : names) {
        b.person(person);
      }
      b.room(room);
      for (const auto& person : names) p.context.push_back(PersonIn{person, room});
    } else if (std::regex_match(s, m, move_re)) {
      seen_event = true;
      const Name actor = m[1].str();
      if (is_variable_name(actor))
        b.variable(actor);
      else
        b.person(actor);
      const Name from = wording::capitalize(m[2].str()), to = wording::capitalize(m[3].str());
      b.room(from);
      b.room(to);
      p.events.push_back(Move{actor, from, to});
    } else if (std::regex_match(s, m, pickup_re)) {
      seen_event = true;
      const Name object = wording::lower(m[2].str());
      b.person(m[1].str());
      b.object(object);
      p.events.push_back(Pickup{m[1].str(), object});
    } else {
      throw ParseError(pos, "not a story sentence: \"" + s + "\"");
    }
  }
  if (!seen_question) throw ParseError(sentences.size() + 1, "missing question");

  if (ground_truth) {
    for (const auto& [var, person] : *ground_truth) {
      b.variable(var);
      b.person(person);
    }
    p.ground_truth = *ground_truth;
  }
  return p;
}

// ---------------------------------------------------------------------------
// Records

namespace {

ojson names_json(const std::vector<Name>& names) { return ojson(names); }

ojson set_json(const NameSet& names) { return ojson(std::vector<Name>(names.begin(), names.end())); }

ojson to_json(const ContextFact& fact) {
  if (const auto* p = std::get_if<PersonIn>(&fact))
    return ojson{{"kind", "person_in"}, {"person", p->person}, {"room", p->room}};
  const auto& o = std::get<ObjectIn>(fact);
  return ojson{{"kind", "object_in"}, {"object", o.object}, {"room", o.room}};
}

ojson to_json(const Event& event) {
  if (const auto* m = std::get_if<Move>(&event))
    return ojson{{"kind", "move"}, {"actor", m->actor}, {"from", m->from}, {"to", m->to}};
  const auto& pick = std::get<Pickup>(event);
  return ojson{{"kind", "pickup"}, {"actor", pick.actor}, {"object", pick.object}};
}

template <typename T>
T field(const ojson& j, const char* key) {
  if (!j.contains(key)) throw std::runtime_error(std::string("missing field \"") + key + "\"");
  return j.at(key).get<T>();
}

ContextFact fact_from(const ojson& j) {
  const auto kind = field<std::string>(j, "kind");
  if (kind == "person_in") return PersonIn{field<Name>(j, "person"), field<Name>(j, "room")};
  if (kind == "object_in") return ObjectIn{field<Name>(j, "object"), field<Name>(j, "room")};
  throw std::runtime_error("unknown context kind \"" + kind + "\"");
}

Event event_from(const ojson& j) {
  const auto kind = field<std::string>(j, "kind");
  if (kind == "move")
    return Move{field<Name>(j, "actor"), field<Name>(j, "from"), field<Name>(j, "to")};
  if (kind == "pickup") return Pickup{field<Name>(j, "actor"), field<Name>(j, "object")};
  throw std::runtime_error("unknown event kind \"" + kind + "\"");
}

NameSet set_from(const ojson& j) {
  const auto v = j.get<std::vector<Name>>();
  return NameSet(v.begin(), v.end());
}

}  // namespace

std::string dataset_header() {
  return ojson{{"format", "eqraq-dataset"}, {"version", kDatasetFormatVersion}}.dump();
}

void check_dataset_header(const std::string& line) {
  ojson j;
  try {
    j = ojson::parse(line);
  } catch (const std::exception&) {
    throw DecodeError(1, "missing dataset header");
  }
  if (!j.is_object() || j.value("format", "") != "eqraq-dataset")
    throw DecodeError(1, "missing dataset header");
  if (j.value("version", -1) != kDatasetFormatVersion)
    throw DecodeError(1, "unsupported dataset version " + j.value("version", ojson()).dump());
}

std::string encode_record(const DatasetRecord& r) {
  const auto& p = r.problem;
  ojson j;
  j["problem_id"] = r.problem_id;
  j["persons"] = names_json(p.persons);
  j["rooms"] = names_json(p.rooms);
  j["objects"] = names_json(p.objects);
  j["variables"] = names_json(p.variables);
  j["context"] = ojson::array();
  for (const auto& f : p.context) j["context"].push_back(to_json(f));
  j["events"] = ojson::array();
  for (const auto& e : p.events) j["events"].push_back(to_json(e));
  j["question"] = {{"kind", p.question.kind == Question::Kind::Person ? "person" : "object"},
                   {"protagonist", p.question.protagonist}};
  j["ground_truth"] = ojson::object();
  for (const auto& [var, person] : p.ground_truth) j["ground_truth"][var] = person;
  j["text"] = {{"context", r.text.context_sentences},
               {"events", r.text.event_sentences},
               {"question", r.text.question_sentence}};
  j["annotations"] = {{"possible_answers", set_json(r.annotations.initial_possible_answers)},
                      {"relevant_variables", set_json(r.annotations.initial_relevant_variables)},
                      {"depth", r.annotations.depth}};
  return j.dump();
}

DatasetRecord decode_record(const std::string& line, std::size_t line_number) {
  try {
    const auto j = ojson::parse(line);
    if (!j.is_object()) throw std::runtime_error("record is not an object");
    DatasetRecord r;
    r.problem_id = field<std::string>(j, "problem_id");
    auto& p = r.problem;
    p.persons = field<std::vector<Name>>(j, "persons");
    p.rooms = field<std::vector<Name>>(j, "rooms");
    p.objects = field<std::vector<Name>>(j, "objects");
    p.variables = field<std::vector<Name>>(j, "variables");
    for (const auto& f : field<ojson>(j, "context")) p.context.push_back(fact_from(f));
    for (const auto& e : field<ojson>(j, "events")) p.events.push_back(event_from(e));
    const auto q = field<ojson>(j, "question");
    const auto kind = field<std::string>(q, "kind");
    if (kind != "person" && kind != "object")
      throw std::runtime_error("unknown question kind \"" + kind + "\"");
    p.question = {kind == "person" ? Question::Kind::Person : Question::Kind::Object,
                  field<Name>(q, "protagonist")};
    const auto truth = field<ojson>(j, "ground_truth");
    for (const auto& [var, person] : truth.items()) p.ground_truth[var] = person.get<Name>();
    const auto text = field<ojson>(j, "text");
    r.text.context_sentences = field<std::vector<std::string>>(text, "context");
    r.text.event_sentences = field<std::vector<std::string>>(text, "events");
    r.text.question_sentence = field<std::string>(text, "question");
    const auto ann = field<ojson>(j, "annotations");
    r.annotations.initial_possible_answers = set_from(field<ojson>(ann, "possible_answers"));
    r.annotations.initial_relevant_variables = set_from(field<ojson>(ann, "relevant_variables"));
    r.annotations.depth = field<std::size_t>(ann, "depth");
    return r;
  } catch (const DecodeError&) {
    throw;
  } catch (const std::exception& e) {
    throw DecodeError(line_number, e.what());
  }
}

DatasetRecord make_record(std::string problem_id, Problem problem) {
  DatasetRecord r;
  r.problem_id = std::move(problem_id);
  r.text = render_problem(problem);
  const auto initial = infer(problem, {});
  r.annotations.initial_possible_answers = initial.possible_answers;
  r.annotations.initial_relevant_variables = initial.relevant_variables;
  r.annotations.depth = depth(problem);
  r.problem = std::move(problem);
  return r;
}

std::vector<DatasetRecord> read_dataset(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DecodeError(1, "empty dataset");
  check_dataset_header(line);
  std::vector<DatasetRecord> out;
  for (std::size_t n = 2; std::getline(in, line); ++n) {
    if (line.empty()) continue;
    out.push_back(decode_record(line, n));
  }
  return out;
}

}  // namespace eqraq
