#include "cogmap/server.hpp"

#include <arpa/inet.h>
#include <fcntl.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <mutex>
#include <stdexcept>
#include <string>
#include <system_error>
#include <thread>
#include <vector>

#include "cogmap/protocol.hpp"

namespace cogmap {

std::uint16_t resolve_port(std::uint16_t fallback) {
  const char* env = std::getenv("COGMAP_PORT");
  if (!env || !*env) return fallback;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 0 || v > 65535) throw std::invalid_argument(std::string("invalid COGMAP_PORT '") + env + "'");
  return static_cast<std::uint16_t>(v);
}

namespace {

constexpr std::size_t kMaxQueuedBytes = 8u << 20;

[[noreturn]] void throw_errno(const char* what) { throw std::system_error(errno, std::generic_category(), what); }

void set_nonblocking(int fd) {
  const int flags = fcntl(fd, F_GETFL, 0);
  if (flags < 0 || fcntl(fd, F_SETFL, flags | O_NONBLOCK) < 0) throw_errno("fcntl");
}

struct Client {
  int fd = -1;
  FrameDecoder decoder;
  std::vector<std::uint8_t> out;
  bool closed = false;
};

}  // namespace

struct LiveServer::Impl {
  LiveSimulator& sim;
  ServerOptions options;
  int listen_fd = -1;
  int wake[2] = {-1, -1};
  std::uint16_t bound_port = 0;
  std::mutex mutex;  // guards clients
  std::vector<Client> clients;

  Impl(LiveSimulator& s, ServerOptions o) : sim(s), options(o) {
    listen_fd = ::socket(AF_INET, SOCK_STREAM, 0);
    if (listen_fd < 0) throw_errno("socket");
    const int one = 1;
    ::setsockopt(listen_fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(options.loopback_only ? INADDR_LOOPBACK : INADDR_ANY);
    addr.sin_port = htons(options.port);
    if (::bind(listen_fd, reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0) {
      ::close(listen_fd);
      throw_errno("bind");
    }
    if (::listen(listen_fd, 8) < 0) throw_errno("listen");
    socklen_t len = sizeof addr;
    ::getsockname(listen_fd, reinterpret_cast<sockaddr*>(&addr), &len);
    bound_port = ntohs(addr.sin_port);
    set_nonblocking(listen_fd);
    if (::pipe(wake) < 0) throw_errno("pipe");
    set_nonblocking(wake[0]);
    set_nonblocking(wake[1]);
  }

  ~Impl() {
    for (auto& c : clients) ::close(c.fd);
    ::close(listen_fd);
    ::close(wake[0]);
    ::close(wake[1]);
  }

  void broadcast(const nlohmann::json& message) {
    const auto frame = encode_frame(message);
    {
      std::lock_guard lock(mutex);
      for (auto& c : clients) {
        if (c.out.size() + frame.size() > kMaxQueuedBytes) continue;
        c.out.insert(c.out.end(), frame.begin(), frame.end());
      }
    }
    const char b = 1;
    [[maybe_unused]] auto n = ::write(wake[1], &b, 1);
  }

  void handle_input(Client& c) {
    std::uint8_t buf[4096];
    for (;;) {
      const ssize_t n = ::read(c.fd, buf, sizeof buf);
      if (n > 0) {
        c.decoder.feed({buf, static_cast<std::size_t>(n)});
        continue;
      }
      if (n == 0 || (errno != EAGAIN && errno != EWOULDBLOCK)) c.closed = true;
      break;
    }
    try {
      while (auto payload = c.decoder.next()) {
        try {
          sim.enqueue(command_from_json(nlohmann::json::parse(*payload)));
        } catch (const std::exception& e) {
          const auto frame = encode_frame(error_message(e.what()));
          c.out.insert(c.out.end(), frame.begin(), frame.end());
        }
      }
    } catch (const std::runtime_error&) {
      c.closed = true;  // oversized frame: the stream cannot be resynchronized
    }
  }

  void flush(Client& c) {
    while (!c.out.empty()) {
      const ssize_t n = ::send(c.fd, c.out.data(), c.out.size(), MSG_NOSIGNAL);
      if (n > 0) {
        c.out.erase(c.out.begin(), c.out.begin() + n);
        continue;
      }
      if (n < 0 && (errno == EAGAIN || errno == EWOULDBLOCK)) break;
      c.closed = true;
      break;
    }
  }

  void io_loop(const std::atomic<bool>& stop) {
    std::vector<pollfd> fds;
    while (!stop.load()) {
      fds.clear();
      fds.push_back({listen_fd, POLLIN, 0});
      fds.push_back({wake[0], POLLIN, 0});
      {
        std::lock_guard lock(mutex);
        for (const auto& c : clients) {
          fds.push_back({c.fd, static_cast<short>(POLLIN | (c.out.empty() ? 0 : POLLOUT)), 0});
        }
      }
      if (::poll(fds.data(), fds.size(), 50) < 0 && errno != EINTR) throw_errno("poll");
      if (fds[1].revents & POLLIN) {
        char drain[64];
        while (::read(wake[0], drain, sizeof drain) > 0) {
        }
      }
      std::lock_guard lock(mutex);
      for (std::size_t i = 2; i < fds.size() && i - 2 < clients.size(); ++i) {
        Client& c = clients[i - 2];
        if (fds[i].revents & (POLLIN | POLLHUP | POLLERR)) handle_input(c);
        if (!c.closed) flush(c);
      }
      for (auto it = clients.begin(); it != clients.end();) {
        if (it->closed) {
          ::close(it->fd);
          it = clients.erase(it);
        } else {
          ++it;
        }
      }
      if (fds[0].revents & POLLIN) {
        for (;;) {
          const int fd = ::accept(listen_fd, nullptr, nullptr);
          if (fd < 0) break;
          set_nonblocking(fd);
          Client c;
          c.fd = fd;
          const auto frame = encode_frame(snapshot_to_json(latest_snapshot()));
          c.out.assign(frame.begin(), frame.end());
          clients.push_back(std::move(c));
        }
      }
    }
  }

  std::mutex snapshot_mutex;
  nlohmann::json latest;

  Snapshot latest_snapshot() {
    std::lock_guard lock(snapshot_mutex);
    return latest.is_null() ? Snapshot{} : snapshot_from_json(latest);
  }

  void publish_snapshot() {
    const auto j = snapshot_to_json(take_snapshot(sim));
    {
      std::lock_guard lock(snapshot_mutex);
      latest = j;
    }
    broadcast(j);
  }

  void tick_loop(const std::atomic<bool>& stop) {
    using clock = std::chrono::steady_clock;
    const auto period = std::chrono::duration_cast<clock::duration>(std::chrono::duration<double>(options.tick));
    auto next = clock::now();
    double since_snapshot = options.snapshot_interval;
    publish_snapshot();
    while (!stop.load()) {
      next += period;
      std::this_thread::sleep_until(next);
      for (const auto& e : sim.tick(options.tick)) broadcast(event_to_json(e));
      since_snapshot += options.tick;
      if (since_snapshot + 1e-9 >= options.snapshot_interval) {
        publish_snapshot();
        since_snapshot = 0.0;
      }
    }
  }
};

LiveServer::LiveServer(LiveSimulator& sim, ServerOptions options) : impl_(std::make_unique<Impl>(sim, options)) {
  if (!(options.tick > 0.0) || !(options.snapshot_interval > 0.0)) {
    throw std::invalid_argument("tick and snapshot interval must be positive");
  }
}

LiveServer::~LiveServer() = default;

std::uint16_t LiveServer::port() const { return impl_->bound_port; }

void LiveServer::run(const std::atomic<bool>& stop) {
  std::jthread io([&] { impl_->io_loop(stop); });
  impl_->tick_loop(stop);
}

}  // namespace cogmap
