#pragma once

// Episode server over any line transport (stdio pipes or tcp sockets). Each
// connection gets its own sessions; the only shared state is the aggregate
// metrics accumulator.

#include <atomic>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "eqraq/codec.hpp"
#include "eqraq/metrics.hpp"
#include "eqraq/simulator.hpp"

namespace eqraq {

class LineChannel {
 public:
  virtual ~LineChannel() = default;
  /// nullopt at end of stream.
  virtual std::optional<std::string> read_line() = 0;
  virtual void write_line(const std::string& line) = 0;
};

class StreamChannel : public LineChannel {
 public:
  StreamChannel(std::istream& in, std::ostream& out) : in_(in), out_(out) {}
  std::optional<std::string> read_line() override;
  void write_line(const std::string& line) override;

 private:
  std::istream& in_;
  std::ostream& out_;
};

/// Owns a connected socket.
class SocketChannel : public LineChannel {
 public:
  explicit SocketChannel(int fd) : fd_(fd) {}
  SocketChannel(const SocketChannel&) = delete;
  SocketChannel& operator=(const SocketChannel&) = delete;
  ~SocketChannel() override;

  std::optional<std::string> read_line() override;
  void write_line(const std::string& line) override;

 private:
  int fd_;
  std::string buffer_;
};

/// Throws Error if the connection fails.
int connect_tcp(const std::string& host, std::uint16_t port);

struct ServeOptions {
  Mode mode;
  std::optional<std::uint64_t> shuffle_seed;
  std::size_t episodes = 0;  // per connection; 0 = the whole dataset
};

struct ConnectionResult {
  MetricsAccumulator metrics;
  std::size_t completed = 0;
  std::size_t aborted = 0;
};

class EpisodeServer {
 public:
  EpisodeServer(std::vector<DatasetRecord> dataset, ServeOptions options);

  /// Runs the protocol until the dataset is exhausted or the client hangs
  /// up. Never throws on bad client input.
  ConnectionResult serve(LineChannel& channel);

  MetricsReport aggregate() const;
  std::size_t aborted() const;

 private:
  std::vector<std::size_t> order() const;

  std::vector<DatasetRecord> dataset_;
  ServeOptions options_;
  mutable std::mutex mutex_;
  MetricsAccumulator aggregate_;
  std::size_t aborted_ = 0;
};

class TcpListener {
 public:
  /// Port 0 picks a free port. Throws Error on failure.
  explicit TcpListener(std::uint16_t port);
  TcpListener(const TcpListener&) = delete;
  TcpListener& operator=(const TcpListener&) = delete;
  ~TcpListener();

  std::uint16_t port() const { return port_; }

  /// Accepts connections, one handler thread each, until `max_connections`
  /// have been handled (0 = forever). Returns when all handlers finished.
  void run(EpisodeServer& server, std::size_t max_connections = 0);

 private:
  int fd_ = -1;
  std::uint16_t port_ = 0;
};

}  // namespace eqraq
