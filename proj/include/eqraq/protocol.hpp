#pragma once

// Newline-delimited JSON messages exchanged between the episode server and
// an agent. Every message is one object with a "type" field:
//
//   client  {"type":"HELLO","protocol_version":"eqraq/1"}
//   server  {"type":"HELLO","protocol_version":"eqraq/1","mode":"supervised","emit_ustar":true}
//   server  {"type":"PROBLEM","problem_id":..,"sentences":[..],"question":..,
//            "persons":[..],"rooms":[..],"variables":[..],"ustar":{..}}
//   client  {"type":"ACTION","action":"query"|"answer","name":..,"explanation":{..}}
//   server  {"type":"FEEDBACK","kind":..,"u_text":..,"reveal":..,"ustar":{..},
//            "targets":{..},"rewards":{..},"done":bool}
//   server  {"type":"SUMMARY","scope":"episode"|"aggregate",..}
//   server  {"type":"ERROR","code":..,"detail":..}
//
// Unknown fields are ignored. Optional fields are omitted, never null.

#include <string>

#include <json.hpp>

#include "eqraq/metrics.hpp"
#include "eqraq/simulator.hpp"

namespace eqraq::wire {

inline constexpr const char* kProtocolVersion = "eqraq/1";

using Json = nlohmann::ordered_json;

Json ustar_json(const UStarRecord& record);
UStarRecord ustar_from(const Json& j);

std::string hello_request();
std::string hello_reply(const Mode& mode);
std::string problem_message(const Observation& observation);
std::string action_message(const AgentAction& action);
std::string feedback_message(const FeedbackBundle& bundle);
std::string episode_summary(const std::string& problem_id, const MetricsReport& report);
std::string aggregate_summary(const MetricsReport& report, std::size_t aborted);
std::string error_message(const std::string& code, const std::string& detail);

/// Throws ProtocolError("bad_message") on anything that is not a JSON object
/// with a string "type".
Json parse_message(const std::string& line);
std::string type_of(const Json& message);

/// Throws ProtocolError("bad_message") when required fields are missing.
AgentAction action_from(const Json& message);
Observation observation_from(const Json& message);
FeedbackBundle feedback_from(const Json& message);

}  // namespace eqraq::wire
