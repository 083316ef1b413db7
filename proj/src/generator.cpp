#include "eqraq/generator.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <mutex>
#include <ostream>
#include <random>
#include <thread>

#include "eqraq/inference.hpp"

namespace eqraq {

void check_params(const GenParams& p) {
  auto fail = [](const std::string& what) { throw ParamError(what); };
  if (p.n_persons == 0) fail("persons must be at least 1");
  if (p.n_variables >= 1 && p.n_persons < 2)
    fail("persons (" + std::to_string(p.n_persons) + ") must be at least 2 when variables >= 1");
  if (p.target_depth > p.n_variables)
    fail("depth (" + std::to_string(p.target_depth) + ") must not exceed variables (" +
         std::to_string(p.n_variables) + ")");
  if (p.n_variables > p.n_events)
    fail("variables (" + std::to_string(p.n_variables) + ") must not exceed events (" +
         std::to_string(p.n_events) + ")");
  if (p.n_rooms < 2) fail("rooms must be at least 2");
  if (p.question_type == Question::Kind::Object && p.n_objects == 0)
    fail("object questions need objects >= 1");
  if (p.n_persons > person_pool().size())
    fail("persons must not exceed the name pool (" + std::to_string(person_pool().size()) + ")");
  if (p.n_rooms > room_pool().size())
    fail("rooms must not exceed the name pool (" + std::to_string(room_pool().size()) + ")");
  if (p.n_objects > object_pool().size())
    fail("objects must not exceed the name pool (" + std::to_string(object_pool().size()) + ")");
  if (p.max_rejects == 0) fail("max_rejects must be at least 1");
}

namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform in [0, n).
  std::size_t below(std::size_t n) {
    return std::size_t((static_cast<unsigned __int128>(engine_()) * n) >> 64);
  }
  bool chance(unsigned percent) { return below(100) < percent; }

 private:
  std::mt19937_64 engine_;
};

std::vector<std::string> sample(const std::vector<std::string>& pool, std::size_t n, Rng& rng) {
  std::vector<std::string> copy = pool;
  for (std::size_t i = 0; i < n; ++i) std::swap(copy[i], copy[i + rng.below(copy.size() - i)]);
  copy.resize(n);
  return copy;
}

struct WalkedMove {
  std::size_t event_index;
  std::size_t crowd;  // persons in the source room, mover included
  bool near_protagonist;
};

struct Candidate {
  Problem problem;
  std::vector<WalkedMove> moves;
};

// Placements, the protagonist, and a consistent random walk.
Candidate walk(const GenParams& params, Rng& rng) {
  Candidate c;
  auto& p = c.problem;
  p.persons = sample(person_pool(), params.n_persons, rng);
  p.rooms = sample(room_pool(), params.n_rooms, rng);
  p.objects = sample(object_pool(), params.n_objects, rng);

  std::vector<std::size_t> location(p.persons.size());
  for (std::size_t i = 0; i < p.persons.size(); ++i) {
    location[i] = rng.below(p.rooms.size());
    p.context.push_back(PersonIn{p.persons[i], p.rooms[location[i]]});
  }
  std::vector<std::size_t> object_room(p.objects.size());
  std::vector<int> holder(p.objects.size(), -1);
  for (std::size_t o = 0; o < p.objects.size(); ++o) {
    object_room[o] = rng.below(p.rooms.size());
    p.context.push_back(ObjectIn{p.objects[o], p.rooms[object_room[o]]});
  }

  if (params.question_type == Question::Kind::Person)
    p.question = {Question::Kind::Person, p.persons[rng.below(p.persons.size())]};
  else
    p.question = {Question::Kind::Object, p.objects[rng.below(p.objects.size())]};
  const bool person_question = params.question_type == Question::Kind::Person;
  const std::size_t protagonist = std::size_t(
      std::find(person_question ? p.persons.begin() : p.objects.begin(),
                person_question ? p.persons.end() : p.objects.end(), p.question.protagonist) -
      (person_question ? p.persons.begin() : p.objects.begin()));

  auto object_at = [&](std::size_t o) {
    return holder[o] >= 0 ? location[std::size_t(holder[o])] : object_room[o];
  };

  for (std::size_t k = 0; k < params.n_events; ++k) {
    std::vector<std::pair<std::size_t, std::size_t>> pickups;
    for (std::size_t o = 0; o < p.objects.size(); ++o) {
      for (std::size_t i = 0; i < p.persons.size(); ++i) {
        if (holder[o] != int(i) && location[i] == object_at(o)) pickups.emplace_back(i, o);
      }
    }
    if (!pickups.empty() && rng.chance(25)) {
      const auto [i, o] = pickups[rng.below(pickups.size())];
      holder[o] = int(i);
      p.events.push_back(Pickup{p.persons[i], p.objects[o]});
      continue;
    }
    const std::size_t mover = rng.below(p.persons.size());
    std::size_t to = rng.below(p.rooms.size() - 1);
    if (to >= location[mover]) ++to;

    const std::size_t from = location[mover];
    const auto crowd = std::size_t(std::count(location.begin(), location.end(), from));
    const bool near = person_question ? location[protagonist] == from : object_at(protagonist) == from;
    c.moves.push_back({p.events.size(), crowd, near});
    p.events.push_back(Move{p.persons[mover], p.rooms[from], p.rooms[to]});
    location[mover] = to;
  }
  return c;
}

// Hides the actors of n_variables crowded moves. Returns false when
// there are not enough crowded moves.
bool obfuscate(Candidate& c, const GenParams& params, Rng& rng) {
  std::vector<WalkedMove> pool;
  for (const auto& m : c.moves) {
    if (m.crowd >= 2) pool.push_back(m);
  }
  if (pool.size() < params.n_variables) return false;

  // Moves next to the protagonist are what make variables matter.
  const bool want_relevant = params.target_depth > 0;
  std::vector<std::size_t> chosen;
  for (std::size_t k = 0; k < params.n_variables; ++k) {
    std::size_t total = 0;
    std::vector<std::size_t> weight(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i) {
      weight[i] = (pool[i].near_protagonist == want_relevant) ? 4 : 1;
      total += weight[i];
    }
    std::size_t ticket = rng.below(total), i = 0;
    while (ticket >= weight[i]) ticket -= weight[i++];
    chosen.push_back(pool[i].event_index);
    pool.erase(pool.begin() + std::ptrdiff_t(i));
  }
  std::sort(chosen.begin(), chosen.end());

  auto& p = c.problem;
  for (std::size_t v = 0; v < chosen.size(); ++v) {
    auto& move = std::get<Move>(p.events[chosen[v]]);
    const Name var = "$V" + std::to_string(v);
    p.variables.push_back(var);
    p.ground_truth[var] = move.actor;
    move.actor = var;
  }
  return true;
}

}  // namespace

std::pair<Problem, Annotations> generate(const GenParams& params) {
  check_params(params);
  Rng rng(params.seed);
  for (std::size_t attempt = 0; attempt < params.max_rejects; ++attempt) {
    auto c = walk(params, rng);
    if (!obfuscate(c, params, rng)) continue;

    std::size_t d;
    try {
      d = depth(c.problem);  // also rejects stalled oracle trajectories
    } catch (const InferenceError&) {
      continue;
    }
    if (d != params.target_depth) continue;

    const auto initial = infer(c.problem, {});
    return {std::move(c.problem), Annotations{initial.possible_answers, initial.relevant_variables, d}};
  }
  throw GenerationError("no problem reached depth " + std::to_string(params.target_depth) + " in " +
                        std::to_string(params.max_rejects) + " attempts");
}

std::string problem_id_for(std::uint64_t seed, std::size_t index) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%llu-%06zu", static_cast<unsigned long long>(seed), index);
  return buf;
}

DatasetStats generate_dataset(const DatasetPlan& plan, std::ostream& sink) {
  const auto t0 = std::chrono::steady_clock::now();
  check_params(plan.params);
  const std::size_t lo = plan.params.target_depth;
  const std::size_t hi = plan.max_depth.value_or(lo);
  if (hi < lo) throw ParamError("max depth must not be below depth");
  {
    GenParams top = plan.params;
    top.target_depth = hi;
    check_params(top);
  }

  sink << dataset_header() << '\n';
  const unsigned threads = std::max(1u, plan.threads);
  constexpr std::size_t kChunk = 2048;
  std::vector<std::string> lines;

  for (std::size_t base = 0; base < plan.count; base += kChunk) {
    const std::size_t n = std::min(kChunk, plan.count - base);
    lines.assign(n, {});
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    std::mutex failure_mutex;

    auto work = [&] {
      for (std::size_t k; !failed && (k = next.fetch_add(1)) < n;) {
        const std::size_t index = base + k;
        GenParams p = plan.params;
        p.seed = plan.params.seed + index;
        p.target_depth = lo + index % (hi - lo + 1);
        try {
          auto [problem, annotations] = generate(p);
          DatasetRecord r;
          r.problem_id = problem_id_for(plan.params.seed, index);
          r.text = render_problem(problem);
          r.annotations = std::move(annotations);
          r.problem = std::move(problem);
          lines[k] = encode_record(r);
        } catch (const Error& e) {
          std::lock_guard lock(failure_mutex);
          if (!failed.exchange(true))
            failure = std::make_exception_ptr(
                GenerationError("record " + std::to_string(index) + ": " + e.what()));
        }
      }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    for (const auto& line : lines) sink << line << '\n';
  }
  sink.flush();
  return {plan.count, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()};
}

}  // namespace eqraq
