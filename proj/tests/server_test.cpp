#include <gtest/gtest.h>

#include <sstream>
#include <thread>

#include "eqraq/agents.hpp"
#include "eqraq/generator.hpp"
#include "eqraq/protocol.hpp"
#include "eqraq/server.hpp"
#include "support/fixtures.hpp"

using namespace eqraq;
using namespace eqraq::testing;

namespace {

std::vector<DatasetRecord> examples() {
  return {make_record("porch", porch_problem()), make_record("attic", attic_problem()),
          make_record("gift", gift_problem())};
}

std::vector<wire::Json> replies(const std::string& output) {
  std::vector<wire::Json> out;
  std::istringstream in(output);
  for (std::string line; std::getline(in, line);) out.push_back(wire::parse_message(line));
  return out;
}

ServeOptions options(ModeKind kind = ModeKind::Eval) {
  ServeOptions o;
  o.mode = {kind, true};
  return o;
}

// Plays the oracle against the server over a channel, as a client would.
MetricsReport play_oracle(LineChannel& channel) {
  channel.write_line(wire::hello_request());
  const auto hello = wire::parse_message(*channel.read_line());
  EXPECT_EQ(wire::type_of(hello), "HELLO");
  MetricsReport summary;
  OracleAgent agent;
  for (;;) {
    const auto line = channel.read_line();
    if (!line) break;
    const auto msg = wire::parse_message(*line);
    const auto type = wire::type_of(msg);
    if (type == "PROBLEM") {
      agent.begin(wire::observation_from(msg));
      channel.write_line(wire::action_message(agent.act()));
    } else if (type == "FEEDBACK") {
      const auto fb = wire::feedback_from(msg);
      agent.observe(fb);
      if (!fb.done) channel.write_line(wire::action_message(agent.act()));
    } else if (type == "SUMMARY" && msg.at("scope") == "aggregate") {
      const auto& m = msg.at("metrics");
      summary.episodes = m.at("episodes").get<std::size_t>();
      summary.turns = m.at("turns").get<std::size_t>();
      summary.correct_turns =
          std::size_t(m.at("interaction_accuracy").get<double>() * double(summary.turns) + 0.5);
      break;
    }
  }
  return summary;
}

}  // namespace

TEST(Server, ScriptedPorchEpisode) {
  std::istringstream in(wire::hello_request() + "\n" +
                        R"({"type":"ACTION","action":"query","name":"$V0"})" "\n"
                        R"({"type":"ACTION","action":"answer","name":"Porch"})" "\n");
  std::ostringstream out;
  StreamChannel channel(in, out);
  ServeOptions o = options(ModeKind::SupervisedTrain);
  o.episodes = 1;
  EpisodeServer server(examples(), o);
  const auto result = server.serve(channel);
  EXPECT_EQ(result.completed, 1u);

  const auto r = replies(out.str());
  ASSERT_EQ(r.size(), 6u);
  EXPECT_EQ(r[0].at("mode"), "supervised");
  EXPECT_EQ(r[1].at("type"), "PROBLEM");
  EXPECT_EQ(r[1].at("ustar").dump(),
            R"({"possible_answers":["Boudoir","Porch"],"relevant_variables":["$V0"]})");
  EXPECT_EQ(r[2].at("kind"), "helpful_query");
  EXPECT_EQ(r[2].at("reveal"), "$V0 is Silvia.");
  EXPECT_EQ(r[2].at("targets").at("action").at("name"), "$V0");
  EXPECT_EQ(r[3].at("u_text"), "This answer is correct.");
  EXPECT_EQ(r[3].at("done"), true);
  EXPECT_EQ(r[4].at("scope"), "episode");
  EXPECT_EQ(r[5].at("scope"), "aggregate");
  EXPECT_EQ(r[5].at("metrics").at("interaction_accuracy"), 1.0);
}

TEST(Server, FeedbackRoundTrip) {
  auto [s, obs] = Session::start(porch_problem(), Mode{ModeKind::RLTrain, true});
  const auto bundle = s.step(AgentAction::query("$V0"));
  const auto line = wire::feedback_message(bundle);
  const auto back = wire::feedback_from(wire::parse_message(line));
  EXPECT_EQ(back.feedback.kind, FeedbackKind::HelpfulQuery);
  EXPECT_EQ(back.feedback.text, bundle.feedback.text);
  EXPECT_EQ(back.reveal, bundle.reveal);
  EXPECT_EQ(back.ustar, bundle.ustar);
  EXPECT_EQ(back.rewards, bundle.rewards);
  EXPECT_EQ(wire::feedback_message(back), line);
}

TEST(Server, VersionMismatch) {
  std::istringstream in(R"({"type":"HELLO","protocol_version":"eqraq/0"})" "\n");
  std::ostringstream out;
  StreamChannel channel(in, out);
  EpisodeServer server(examples(), options());
  server.serve(channel);
  const auto r = replies(out.str());
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].at("type"), "ERROR");
  EXPECT_EQ(r[0].at("code"), "version");
}

TEST(Server, BadEntityAbortsEpisodeOnly) {
  std::istringstream in(wire::hello_request() + "\n" +
                        R"({"type":"ACTION","action":"answer","name":"Garage"})" "\n" +
                        R"({"type":"ACTION","action":"answer","name":"Porch"})" "\n");
  std::ostringstream out;
  StreamChannel channel(in, out);
  ServeOptions o = options();
  o.episodes = 2;
  EpisodeServer server(examples(), o);
  const auto result = server.serve(channel);
  const auto r = replies(out.str());
  EXPECT_EQ(r[2].at("type"), "ERROR");
  EXPECT_EQ(r[2].at("code"), "bad_entity");
  EXPECT_EQ(r[3].at("type"), "PROBLEM");
  EXPECT_EQ(r[3].at("problem_id"), "attic");
  EXPECT_EQ(result.aborted, 1u);
  EXPECT_EQ(result.completed, 1u);
  EXPECT_EQ(r.back().at("aborted_episodes"), 1);
}

TEST(Server, MalformedInput) {
  for (const std::string bad : {"not json", "[1,2]", R"({"type":"ACTION"})", R"({"type":"HELLO"})"}) {
    std::istringstream in(wire::hello_request() + "\n" + bad + "\n");
    std::ostringstream out;
    StreamChannel channel(in, out);
    ServeOptions o = options();
    o.episodes = 1;
    EpisodeServer server(examples(), o);
    server.serve(channel);
    const auto r = replies(out.str());
    ASSERT_GE(r.size(), 3u) << bad;
    EXPECT_EQ(r[2].at("type"), "ERROR") << bad;
    EXPECT_EQ(r[2].at("code"), "bad_message") << bad;
  }
}

TEST(Server, ShuffleIsSeeded) {
  auto ids = [](std::uint64_t seed) {
    ServeOptions o;
    o.shuffle_seed = seed;
    std::istringstream in(wire::hello_request() + "\n");
    std::ostringstream out;
    StreamChannel channel(in, out);
    EpisodeServer server(examples(), o);
    server.serve(channel);
    return replies(out.str()).at(1).at("problem_id").get<std::string>();
  };
  EXPECT_EQ(ids(3), ids(3));
}

TEST(Server, OracleOverTcp) {
  EpisodeServer server(examples(), options());
  TcpListener listener(0);
  std::thread serving([&] { listener.run(server, 2); });
  for (int client = 0; client < 2; ++client) {
    SocketChannel channel(connect_tcp("127.0.0.1", listener.port()));
    const auto summary = play_oracle(channel);
    EXPECT_EQ(summary.episodes, 3u);
    EXPECT_EQ(summary.turns, 6u);  // depths 1, 1, 1
    EXPECT_EQ(summary.correct_turns, 6u);
  }
  serving.join();
  EXPECT_EQ(server.aggregate().episodes, 6u);
  EXPECT_DOUBLE_EQ(server.aggregate().interaction_accuracy(), 1.0);
  EXPECT_EQ(server.aborted(), 0u);
}

TEST(Server, OracleOverTcpOnGeneratedProblems) {
  DatasetPlan plan;
  plan.params.n_variables = 3;
  plan.params.n_events = 8;
  plan.params.target_depth = 0;
  plan.params.seed = 11;
  plan.max_depth = 3;
  plan.count = 100;
  std::stringstream file;
  generate_dataset(plan, file);
  auto dataset = read_dataset(file);
  std::size_t expected_turns = 0;
  for (const auto& r : dataset) expected_turns += r.annotations.depth + 1;

  EpisodeServer server(std::move(dataset), options(ModeKind::SupervisedTrain));
  TcpListener listener(0);
  std::thread serving([&] { listener.run(server, 1); });
  SocketChannel channel(connect_tcp("localhost", listener.port()));
  const auto summary = play_oracle(channel);
  serving.join();
  EXPECT_EQ(summary.episodes, 100u);
  EXPECT_EQ(summary.turns, expected_turns);
  EXPECT_EQ(summary.correct_turns, expected_turns);
  EXPECT_DOUBLE_EQ(server.aggregate().interaction_accuracy(), 1.0);
  EXPECT_DOUBLE_EQ(server.aggregate().explanation.macro_f1, 1.0);
}
