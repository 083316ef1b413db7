#include "eqraq/server.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <thread>

#include "eqraq/protocol.hpp"

namespace eqraq {

namespace {
constexpr std::size_t kMaxLine = 1 << 20;

// Messages are small and often sent back to back (FEEDBACK, SUMMARY,
// PROBLEM); without this each one can wait on a delayed ACK.
void no_delay(int fd) {
  int on = 1;
  ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &on, sizeof on);
}
}  // namespace

std::optional<std::string> StreamChannel::read_line() {
  std::string line;
  if (!std::getline(in_, line)) return std::nullopt;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

void StreamChannel::write_line(const std::string& line) { out_ << line << '\n' << std::flush; }

SocketChannel::~SocketChannel() {
  if (fd_ >= 0) ::close(fd_);
}

std::optional<std::string> SocketChannel::read_line() {
  for (;;) {
    if (auto nl = buffer_.find('\n'); nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return line;
    }
    if (buffer_.size() > kMaxLine) {
      // Oversized line: hand it over as-is so the caller can reject it.
      std::string line;
      line.swap(buffer_);
      return line;
    }
    char chunk[4096];
    const ssize_t n = ::recv(fd_, chunk, sizeof chunk, 0);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) {
      if (buffer_.empty()) return std::nullopt;
      std::string line;
      line.swap(buffer_);
      return line;
    }
    buffer_.append(chunk, std::size_t(n));
  }
}

void SocketChannel::write_line(const std::string& line) {
  const std::string data = line + '\n';
  std::size_t sent = 0;
  while (sent < data.size()) {
    const ssize_t n = ::send(fd_, data.data() + sent, data.size() - sent, MSG_NOSIGNAL);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) throw Error(std::string("socket write failed: ") + std::strerror(errno));
    sent += std::size_t(n);
  }
}

int connect_tcp(const std::string& host, std::uint16_t port) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* found = nullptr;
  if (int rc = ::getaddrinfo(host.c_str(), std::to_string(port).c_str(), &hints, &found); rc != 0)
    throw Error("cannot resolve " + host + ": " + ::gai_strerror(rc));
  int fd = -1;
  for (auto* ai = found; ai; ai = ai->ai_next) {
    fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (fd < 0) continue;
    if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) break;
    ::close(fd);
    fd = -1;
  }
  ::freeaddrinfo(found);
  if (fd < 0) throw Error("cannot connect to " + host + ":" + std::to_string(port));
  no_delay(fd);
  return fd;
}

// ---------------------------------------------------------------------------

EpisodeServer::EpisodeServer(std::vector<DatasetRecord> dataset, ServeOptions options)
    : dataset_(std::move(dataset)), options_(options) {}

std::vector<std::size_t> EpisodeServer::order() const {
  std::vector<std::size_t> idx(dataset_.size());
  std::iota(idx.begin(), idx.end(), 0);
  if (options_.shuffle_seed) {
    std::mt19937_64 rng(*options_.shuffle_seed);
    for (std::size_t i = idx.size(); i > 1; --i)
      std::swap(idx[i - 1], idx[std::size_t((static_cast<unsigned __int128>(rng()) * i) >> 64)]);
  }
  if (options_.episodes && options_.episodes < idx.size()) idx.resize(options_.episodes);
  return idx;
}

ConnectionResult EpisodeServer::serve(LineChannel& channel) {
  ConnectionResult result;
  auto finish = [&] {
    std::lock_guard lock(mutex_);
    aggregate_.merge(result.metrics);
    aborted_ += result.aborted;
  };

  try {
    auto first = channel.read_line();
    if (!first) return result;
    wire::Json hello;
    try {
      hello = wire::parse_message(*first);
    } catch (const ProtocolError& e) {
      channel.write_line(wire::error_message(e.code(), e.what()));
      return result;
    }
    if (wire::type_of(hello) != "HELLO") {
      channel.write_line(wire::error_message("bad_message", "expected HELLO"));
      return result;
    }
    const auto version = hello.value("protocol_version", std::string());
    if (version != wire::kProtocolVersion) {
      channel.write_line(wire::error_message(
          "version", "unsupported protocol version \"" + version + "\" (server speaks " +
                         wire::kProtocolVersion + ")"));
      return result;
    }
    channel.write_line(wire::hello_reply(options_.mode));

    bool hung_up = false;
    for (std::size_t index : order()) {
      const auto& record = dataset_[index];
      auto [session, observation] = Session::start(record, options_.mode);
      channel.write_line(wire::problem_message(observation));

      while (!session.done()) {
        auto line = channel.read_line();
        if (!line) {
          hung_up = true;
          break;
        }
        try {
          if (line->size() > kMaxLine) throw ProtocolError("bad_message", "line too long");
          const auto message = wire::parse_message(*line);
          if (wire::type_of(message) != "ACTION")
            throw ProtocolError("bad_message", "expected ACTION, got " + wire::type_of(message));
          channel.write_line(wire::feedback_message(session.step(wire::action_from(message))));
        } catch (const ProtocolError& e) {
          channel.write_line(wire::error_message(e.code(), e.what()));
          break;
        }
      }
      if (hung_up) {
        ++result.aborted;
        break;
      }
      if (!session.done()) {
        ++result.aborted;
        continue;
      }
      const auto log = session.episode_log();
      MetricsAccumulator one;
      one.add(log);
      result.metrics.merge(one);
      ++result.completed;
      channel.write_line(wire::episode_summary(record.problem_id, one.report()));
    }
    if (!hung_up) channel.write_line(wire::aggregate_summary(result.metrics.report(), result.aborted));
  } catch (const std::exception&) {
    // Transport failure: the peer is gone; keep what was scored.
  }
  finish();
  return result;
}

MetricsReport EpisodeServer::aggregate() const {
  std::lock_guard lock(mutex_);
  return aggregate_.report();
}

std::size_t EpisodeServer::aborted() const {
  std::lock_guard lock(mutex_);
  return aborted_;
}

// ---------------------------------------------------------------------------

TcpListener::TcpListener(std::uint16_t port) {
  fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd_ < 0) throw Error(std::string("socket: ") + std::strerror(errno));
  int on = 1;
  ::setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &on, sizeof on);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_ANY);
  addr.sin_port = htons(port);
  if (::bind(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0 || ::listen(fd_, 64) != 0) {
    const std::string why = std::strerror(errno);
    ::close(fd_);
    throw Error("cannot listen on port " + std::to_string(port) + ": " + why);
  }
  socklen_t len = sizeof addr;
  ::getsockname(fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
}

TcpListener::~TcpListener() {
  if (fd_ >= 0) ::close(fd_);
}

void TcpListener::run(EpisodeServer& server, std::size_t max_connections) {
  std::vector<std::thread> handlers;
  for (std::size_t accepted = 0; max_connections == 0 || accepted < max_connections;) {
    const int client = ::accept(fd_, nullptr, nullptr);
    if (client < 0) {
      if (errno == EINTR) continue;
      break;
    }
    ++accepted;
    no_delay(client);
    handlers.emplace_back([&server, client] {
      SocketChannel channel(client);
      server.serve(channel);
    });
  }
  for (auto& t : handlers) t.join();
}

}  // namespace eqraq
