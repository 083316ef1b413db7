#include "eqraq/protocol.hpp"

namespace eqraq::wire {

namespace {

Json names(const NameSet& set) { return Json(std::vector<Name>(set.begin(), set.end())); }

NameSet name_set(const Json& j) {
  NameSet out;
  for (const auto& n : j) out.insert(n.get<Name>());
  return out;
}

Json action_json(const AgentAction& a) {
  Json j;
  j["action"] = a.kind == AgentAction::Kind::Query ? "query" : "answer";
  j["name"] = a.name;
  if (a.explanation) j["explanation"] = ustar_json(*a.explanation);
  return j;
}

AgentAction action_fields(const Json& j) {
  if (!j.contains("action") || !j["action"].is_string() || !j.contains("name") ||
      !j["name"].is_string())
    throw ProtocolError("bad_message", "ACTION needs string fields \"action\" and \"name\"");
  const auto kind = j["action"].get<std::string>();
  AgentAction a;
  if (kind == "query")
    a.kind = AgentAction::Kind::Query;
  else if (kind == "answer")
    a.kind = AgentAction::Kind::Answer;
  else
    throw ProtocolError("bad_message", "ACTION kind must be query or answer, got \"" + kind + "\"");
  a.name = j["name"].get<std::string>();
  if (j.contains("explanation")) a.explanation = ustar_from(j["explanation"]);
  return a;
}

}  // namespace

Json ustar_json(const UStarRecord& r) {
  return Json{{"possible_answers", names(r.possible_answers)},
              {"relevant_variables", names(r.relevant_variables)}};
}

UStarRecord ustar_from(const Json& j) {
  if (!j.is_object()) throw ProtocolError("bad_message", "explanation must be an object");
  try {
    UStarRecord r;
    if (j.contains("possible_answers")) r.possible_answers = name_set(j["possible_answers"]);
    if (j.contains("relevant_variables")) r.relevant_variables = name_set(j["relevant_variables"]);
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ProtocolError("bad_message", std::string("explanation: ") + e.what());
  }
}

std::string hello_request() {
  return Json{{"type", "HELLO"}, {"protocol_version", kProtocolVersion}}.dump();
}

std::string hello_reply(const Mode& mode) {
  return Json{{"type", "HELLO"},
              {"protocol_version", kProtocolVersion},
              {"mode", to_string(mode.kind)},
              {"emit_ustar", mode.emit_ustar}}
      .dump();
}

std::string problem_message(const Observation& o) {
  Json j{{"type", "PROBLEM"},     {"problem_id", o.problem_id}, {"sentences", o.sentences},
         {"question", o.question}, {"persons", o.persons},      {"rooms", o.rooms},
         {"variables", o.variables}};
  if (o.ustar) j["ustar"] = ustar_json(*o.ustar);
  return j.dump();
}

std::string action_message(const AgentAction& action) {
  Json j{{"type", "ACTION"}};
  j.update(action_json(action));
  return j.dump();
}

std::string feedback_message(const FeedbackBundle& b) {
  Json j{{"type", "FEEDBACK"}, {"kind", to_string(b.feedback.kind)}, {"u_text", b.feedback.text}};
  if (b.reveal) j["reveal"] = *b.reveal;
  if (b.ustar) j["ustar"] = ustar_json(*b.ustar);
  if (b.targets) {
    j["targets"] = {{"action", action_json(b.targets->action)},
                    {"explanation", ustar_json(b.targets->explanation)}};
  }
  if (b.rewards) j["rewards"] = {{"action", b.rewards->action}, {"explanation", b.rewards->explanation}};
  j["done"] = b.done;
  return j.dump();
}

std::string episode_summary(const std::string& problem_id, const MetricsReport& report) {
  Json j{{"type", "SUMMARY"}, {"scope", "episode"}, {"problem_id", problem_id}};
  j["metrics"] = Json::parse(metrics_record(report));
  return j.dump();
}

std::string aggregate_summary(const MetricsReport& report, std::size_t aborted) {
  Json j{{"type", "SUMMARY"}, {"scope", "aggregate"}, {"aborted_episodes", aborted}};
  j["metrics"] = Json::parse(metrics_record(report));
  return j.dump();
}

std::string error_message(const std::string& code, const std::string& detail) {
  return Json{{"type", "ERROR"}, {"code", code}, {"detail", detail}}.dump();
}

Json parse_message(const std::string& line) {
  Json j;
  try {
    j = Json::parse(line);
  } catch (const nlohmann::json::exception&) {
    throw ProtocolError("bad_message", "message is not valid JSON");
  }
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
    throw ProtocolError("bad_message", "message must be an object with a string \"type\"");
  return j;
}

std::string type_of(const Json& message) { return message.at("type").get<std::string>(); }

AgentAction action_from(const Json& message) { return action_fields(message); }

Observation observation_from(const Json& j) {
  try {
    Observation o;
    o.problem_id = j.at("problem_id").get<std::string>();
    o.sentences = j.at("sentences").get<std::vector<std::string>>();
    o.question = j.at("question").get<std::string>();
    o.persons = j.value("persons", std::vector<Name>{});
    o.rooms = j.value("rooms", std::vector<Name>{});
    o.variables = j.value("variables", std::vector<Name>{});
    if (j.contains("ustar")) o.ustar = ustar_from(j["ustar"]);
    return o;
  } catch (const nlohmann::json::exception& e) {
    throw ProtocolError("bad_message", std::string("PROBLEM: ") + e.what());
  }
}

FeedbackBundle feedback_from(const Json& j) {
  try {
    FeedbackBundle b;
    b.feedback.kind = feedback_kind_from_string(j.at("kind").get<std::string>());
    b.feedback.text = j.at("u_text").get<std::string>();
    if (j.contains("reveal")) b.reveal = j["reveal"].get<std::string>();
    if (j.contains("ustar")) b.ustar = ustar_from(j["ustar"]);
    if (j.contains("targets")) {
      b.targets = Targets{action_fields(j["targets"].at("action")),
                          ustar_from(j["targets"].at("explanation"))};
    }
    if (j.contains("rewards"))
      b.rewards = Rewards{j["rewards"].at("action").get<double>(),
                          j["rewards"].at("explanation").get<double>()};
    b.done = j.at("done").get<bool>();
    return b;
  } catch (const ProtocolError&) {
    throw;
  } catch (const std::exception& e) {
    throw ProtocolError("bad_message", std::string("FEEDBACK: ") + e.what());
  }
}

}  // namespace eqraq::wire
