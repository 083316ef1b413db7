// eqraq: dataset generation, episode serving, local evaluation, a REPL for
// humans, and ingestion of hand-written stories.

#include <CLI11.hpp>

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

#include "eqraq/agents.hpp"
#include "eqraq/codec.hpp"
#include "eqraq/generator.hpp"
#include "eqraq/metrics.hpp"
#include "eqraq/protocol.hpp"
#include "eqraq/server.hpp"
#include "eqraq/wording.hpp"

namespace {

using namespace eqraq;

constexpr int kParamExit = 2;
constexpr int kDatasetExit = 3;

/// Raised for bad flag values that CLI11 cannot see.
struct UsageError : Error {
  using Error::Error;
};

/// Raised for unreadable or undecodable input files.
struct DatasetFail : Error {
  using Error::Error;
};

std::uint64_t default_seed() {
  const char* env = std::getenv("EQRAQ_SEED");
  if (!env || !*env) return 0;
  try {
    std::size_t used = 0;
    const auto v = std::stoull(env, &used);
    if (used == std::strlen(env)) return v;
  } catch (const std::exception&) {
  }
  throw UsageError(std::string("EQRAQ_SEED is not an unsigned integer: \"") + env + "\"");
}

std::vector<DatasetRecord> load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DatasetFail("cannot open dataset " + path);
  try {
    return read_dataset(in);
  } catch (const DecodeError& e) {
    throw DatasetFail(path + ": " + e.what());
  }
}

Mode parse_mode(const std::string& name, bool emit_ustar) {
  try {
    return {mode_kind_from_string(name), emit_ustar};
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

// --- generate --------------------------------------------------------------

struct GenerateArgs {
  GenParams params;
  std::size_t problems = 1000;
  std::string depth = "1";
  std::string question = "person";
  unsigned threads = 1;
  std::string out;
};

void run_generate(GenerateArgs a) {
  DatasetPlan plan;
  plan.params = a.params;
  plan.count = a.problems;
  plan.threads = a.threads;
  static const std::regex range(R"((\d+)(?:-(\d+))?)");
  std::smatch m;
  if (!std::regex_match(a.depth, m, range)) throw UsageError("--depth expects N or LO-HI, got " + a.depth);
  plan.params.target_depth = std::stoul(m[1]);
  if (m[2].matched) plan.max_depth = std::stoul(m[2]);
  if (a.question == "person")
    plan.params.question_type = Question::Kind::Person;
  else if (a.question == "object")
    plan.params.question_type = Question::Kind::Object;
  else
    throw UsageError("--question expects person or object");

  std::ofstream file;
  if (!a.out.empty() && a.out != "-") {
    file.open(a.out, std::ios::binary);
    if (!file) throw DatasetFail("cannot write " + a.out);
  }
  std::ostream& sink = file.is_open() ? file : std::cout;
  const auto stats = generate_dataset(plan, sink);
  const double rate = stats.seconds > 0 ? double(stats.records) / stats.seconds : 0.0;
  std::fprintf(stderr, "generated %zu problems in %.2f s (%.0f problems/s)\n", stats.records,
               stats.seconds, rate);
}

// --- serve -----------------------------------------------------------------

struct ServeArgs {
  std::string dataset;
  std::string mode = "eval";
  bool no_ustar = false;
  std::string transport = "stdio";
  std::uint16_t port = 7401;
  std::optional<std::uint64_t> shuffle_seed;
  std::size_t episodes = 0;
  std::size_t max_connections = 0;
};

void run_serve(const ServeArgs& a) {
  ServeOptions options;
  options.mode = parse_mode(a.mode, !a.no_ustar);
  options.shuffle_seed = a.shuffle_seed;
  options.episodes = a.episodes;
  EpisodeServer server(load_dataset(a.dataset), options);
  if (a.transport == "stdio") {
    StreamChannel channel(std::cin, std::cout);
    server.serve(channel);
  } else if (a.transport == "tcp") {
    TcpListener listener(a.port);
    std::fprintf(stderr, "listening on port %u\n", unsigned(listener.port()));
    listener.run(server, a.max_connections);
  } else {
    throw UsageError("--transport expects stdio or tcp");
  }
  const auto report = server.aggregate();
  std::fprintf(stderr, "served %zu episodes (%zu aborted)\n", report.episodes, server.aborted());
}

// --- eval ------------------------------------------------------------------

struct EvalArgs {
  std::string dataset;
  std::string agent = "oracle";
  std::string mode = "eval";
  std::uint64_t seed = 0;
};

void run_eval(const EvalArgs& a) {
  std::unique_ptr<Agent> agent;
  try {
    agent = make_agent(a.agent, a.seed);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  const Mode mode = parse_mode(a.mode, true);
  MetricsAccumulator metrics;
  for (const auto& record : load_dataset(a.dataset)) metrics.add(run_episode(record, mode, *agent));
  const auto report = metrics.report();
  std::cout << "agent: " << a.agent << '\n' << metrics_table(report) << metrics_record(report) << '\n';
}

// --- play ------------------------------------------------------------------

struct PlayArgs {
  std::string dataset;
  std::size_t index = 0;
  bool ustar = false;
};

void run_play(const PlayArgs& a) {
  const auto dataset = load_dataset(a.dataset);
  if (a.index >= dataset.size())
    throw UsageError("--index " + std::to_string(a.index) + " out of range (dataset has " +
                     std::to_string(dataset.size()) + " problems)");
  const auto& record = dataset[a.index];
  auto [session, obs] = Session::start(record, Mode{ModeKind::Eval, a.ustar});
  auto& out = std::cout;

  out << "Problem " << obs.problem_id << '\n';
  for (const auto& s : obs.sentences) out << "  " << s << '\n';
  out << "  " << obs.question << '\n';
  if (obs.ustar) out << "U*: " << render_ustar(session.problem(), *obs.ustar) << '\n';

  static const char* kUsage = "usage: query <variable> | answer <room> | quit";
  static const std::regex command(R"(\s*(query|answer)\s+(\S+)\s*)", std::regex::icase);
  std::string line;
  while (!session.done()) {
    out << "> " << std::flush;
    if (!std::getline(std::cin, line)) break;
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::smatch m;
    if (std::regex_match(line, m, std::regex(R"(\s*quit\s*)", std::regex::icase))) break;
    if (!std::regex_match(line, m, command)) {
      out << kUsage << '\n';
      continue;
    }
    const std::string verb = wording::lower(m[1].str());
    const auto action = verb == "query" ? AgentAction::query(m[2].str()) : AgentAction::answer(m[2].str());
    try {
      const auto fb = session.step(action);
      out << fb.feedback.text << '\n';
      if (fb.reveal) out << *fb.reveal << '\n';
      if (fb.ustar && !fb.done) out << "U*: " << render_ustar(session.problem(), *fb.ustar) << '\n';
    } catch (const ProtocolError& e) {
      out << e.what() << '\n' << kUsage << '\n';
    }
  }
  const auto log = session.partial_log();
  out << (log.complete ? "episode complete" : "episode abandoned (incomplete)") << " after "
      << log.turns.size() << " turns\n";
}

// --- ingest ----------------------------------------------------------------

struct IngestArgs {
  std::string story;
  std::vector<std::string> truth;
  std::string id;
  std::string out;
};

void run_ingest(const IngestArgs& a) {
  std::ifstream in(a.story);
  if (!in) throw DatasetFail("cannot open story " + a.story);
  std::vector<std::string> sentences;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") != std::string::npos) sentences.push_back(line);
  }

  Assignment truth;
  static const std::regex binding(R"(\s*(\$\w+)\s*=\s*(\w+)\s*)");
  for (const auto& t : a.truth) {
    std::smatch m;
    if (!std::regex_match(t, m, binding)) throw UsageError("--truth expects $VAR=Person, got " + t);
    truth[m[1]] = m[2];
  }

  Problem problem;
  try {
    problem = parse_problem(sentences, truth);
  } catch (const ParseError& e) {
    throw DatasetFail(a.story + ": " + e.what());
  }
  const auto report = validate_problem(problem);
  if (!report.ok) throw DatasetFail(a.story + ": " + report.violations.front());

  std::string id = a.id;
  if (id.empty()) {
    id = a.story.substr(a.story.find_last_of('/') + 1);
    id = id.substr(0, id.find('.'));
  }
  DatasetRecord record;
  try {
    record = make_record(id, std::move(problem));
  } catch (const InferenceError& e) {
    throw DatasetFail(a.story + ": " + e.what());
  }

  std::ofstream file;
  if (!a.out.empty() && a.out != "-") {
    file.open(a.out, std::ios::binary);
    if (!file) throw DatasetFail("cannot write " + a.out);
  }
  std::ostream& sink = file.is_open() ? file : std::cout;
  sink << dataset_header() << '\n' << encode_record(record) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"eqraq: question answering with interaction and explanations"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "generate an annotated dataset");
  generate->add_option("--problems", gen.problems, "number of problems")->capture_default_str();
  generate->add_option("--persons", gen.params.n_persons)->capture_default_str();
  generate->add_option("--rooms", gen.params.n_rooms)->capture_default_str();
  generate->add_option("--objects", gen.params.n_objects)->capture_default_str();
  generate->add_option("--events", gen.params.n_events)->capture_default_str();
  generate->add_option("--variables", gen.params.n_variables)->capture_default_str();
  generate->add_option("--depth", gen.depth, "target depth N, or LO-HI cycled per problem")
      ->capture_default_str();
  generate->add_option("--question", gen.question, "person or object")->capture_default_str();
  auto* seed_opt = generate->add_option("--seed", gen.params.seed, "base seed (default $EQRAQ_SEED or 0)");
  generate->add_option("--max-rejects", gen.params.max_rejects)->capture_default_str();
  generate->add_option("--threads", gen.threads)->capture_default_str();
  generate->add_option("--out", gen.out, "output file (default stdout)");

  ServeArgs serve;
  auto* serve_cmd = app.add_subcommand("serve", "run the episode server");
  serve_cmd->add_option("--dataset", serve.dataset)->required();
  serve_cmd->add_option("--mode", serve.mode, "supervised, rl or eval")->capture_default_str();
  serve_cmd->add_flag("--no-ustar", serve.no_ustar, "do not send U*");
  serve_cmd->add_option("--transport", serve.transport, "stdio or tcp")->capture_default_str();
  serve_cmd->add_option("--port", serve.port)->capture_default_str();
  serve_cmd->add_option("--shuffle-seed", serve.shuffle_seed, "serve problems shuffled by this seed");
  serve_cmd->add_option("--episodes", serve.episodes, "stop after this many problems (0 = all)");
  serve_cmd->add_option("--max-connections", serve.max_connections, "tcp: exit after this many (0 = never)");

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "score a built-in agent on a dataset");
  eval_cmd->add_option("--dataset", eval.dataset)->required();
  eval_cmd->add_option("--agent", eval.agent, "oracle, random, guesser or empty")->capture_default_str();
  eval_cmd->add_option("--mode", eval.mode)->capture_default_str();
  auto* eval_seed = eval_cmd->add_option("--seed", eval.seed, "random agent seed");

  PlayArgs play;
  auto* play_cmd = app.add_subcommand("play", "play one problem interactively");
  play_cmd->add_option("--dataset", play.dataset)->required();
  play_cmd->add_option("--index", play.index)->capture_default_str();
  play_cmd->add_flag("--ustar", play.ustar, "print U* after every turn");

  IngestArgs ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "turn a story file into a one-record dataset");
  ingest_cmd->add_option("story", ingest.story, "one sentence per line, question last")->required();
  ingest_cmd->add_option("--truth", ingest.truth, "ground truth binding, e.g. $V0=Silvia");
  ingest_cmd->add_option("--id", ingest.id, "problem id (default: file stem)");
  ingest_cmd->add_option("--out", ingest.out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kParamExit;
  }

  try {
    if (*generate) {
      if (seed_opt->count() == 0) gen.params.seed = default_seed();
      run_generate(gen);
    } else if (*serve_cmd) {
      run_serve(serve);
    } else if (*eval_cmd) {
      if (eval_seed->count() == 0) eval.seed = default_seed();
      run_eval(eval);
    } else if (*play_cmd) {
      run_play(play);
    } else if (*ingest_cmd) {
      run_ingest(ingest);
    }
  } catch (const ParamError& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return kParamExit;
  } catch (const UsageError& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return kParamExit;
  } catch (const DatasetFail& e) {
    std::cerr << "dataset error: " << e.what() << '\n';
    return kDatasetExit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
