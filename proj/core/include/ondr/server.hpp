#pragma once

#include <atomic>
#include <cstdint>
#include <shared_mutex>
#include <thread>
#include <vector>

#include "ondr/wire.hpp"

namespace ondr {

/// Newline-delimited JSON over TCP, one request per line, one response per
/// request. One thread per connection; read verbs share the store under a
/// shared lock, mutating verbs take it exclusively.
class WireServer {
public:
    /// Binds to 127.0.0.1:port (port 0 picks an ephemeral port). Throws
    /// IoFailure when the socket cannot be set up.
    WireServer(Store& store, ServiceConfig config, std::uint16_t port);
    ~WireServer();

    WireServer(const WireServer&) = delete;
    WireServer& operator=(const WireServer&) = delete;

    /// The port actually bound.
    std::uint16_t port() const { return port_; }

    /// Accept loop; returns after shutdown().
    void run();

    /// Starts run() on a background thread (for embedding and tests).
    void start();

    /// Stops accepting, closes the listener and joins workers.
    void shutdown();

private:
    void serve_connection(int fd);
    static bool is_mutating(std::string_view request_line);

    Store& store_;
    ServiceConfig config_;
    int listen_fd_ = -1;
    std::uint16_t port_ = 0;
    std::atomic<bool> stopping_{false};
    std::shared_mutex store_mutex_;
    std::vector<std::thread> workers_;
    std::thread accept_thread_;
    std::mutex workers_mutex_;
};

} // namespace ondr
