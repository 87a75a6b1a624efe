#pragma once

#include <atomic>
#include <cstdint>
#include <memory>

#include "cogmap/live.hpp"

namespace cogmap {

inline constexpr std::uint16_t kDefaultPort = 7878;

/// Port from the COGMAP_PORT environment variable, else `fallback`.
/// Throws std::invalid_argument on a malformed value.
std::uint16_t resolve_port(std::uint16_t fallback = kDefaultPort);

struct ServerOptions {
  std::uint16_t port = kDefaultPort;  ///< 0 picks an ephemeral port
  double tick = 0.05;                 ///< seconds of wall time per tick
  double snapshot_interval = 0.1;     ///< seconds between snapshot broadcasts
  bool loopback_only = true;
};

/// Serves the live wire protocol over TCP. One thread drives the simulator
/// in real time; a second multiplexes client sockets, so slow clients never
/// stall the tick loop (their output queues are dropped past a limit).
class LiveServer {
 public:
  LiveServer(LiveSimulator& sim, ServerOptions options);
  ~LiveServer();
  LiveServer(const LiveServer&) = delete;
  LiveServer& operator=(const LiveServer&) = delete;

  /// Bound port, valid after construction.
  std::uint16_t port() const;

  /// Blocks until `stop` becomes true.
  void run(const std::atomic<bool>& stop);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace cogmap
