#pragma once

#include <cstddef>
#include <memory>
#include <string>

#include "micropush/bench/config.hpp"

namespace micropush::session {

struct ServerConfig {
  std::string address = "127.0.0.1";
  unsigned short port = 8765;         ///< 0 picks a free port
  double tick_hz = 20.0;              ///< session steps per wall-clock second
  std::size_t max_pending_frames = 60;  ///< beyond this, queued frames coalesce to the latest
  int threads = 1;
  bench::EpisodeConfig base;          ///< parameters of every new session
};

/// WebSocket server, one Session per connection. Messages received between
/// ticks are queued and applied at the next tick boundary, before the step.
class Server {
 public:
  /// Binds and listens; throws micropush::Error when the address is unusable.
  explicit Server(ServerConfig cfg);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  unsigned short port() const;
  /// Serves until stop(); blocks the calling thread (plus cfg.threads - 1 workers).
  void run();
  /// Safe from any thread.
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// `serve` entry point: runs until SIGINT or SIGTERM. Returns the exit code.
int run_server(const ServerConfig& cfg);

}  // namespace micropush::session
