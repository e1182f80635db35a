#include "ondr/server.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <mutex>
#include <string>

#include <json.hpp>

#include "ondr/errors.hpp"

namespace ondr {

WireServer::WireServer(Store& store, ServiceConfig config, std::uint16_t port)
    : store_(store), config_(std::move(config)) {
    listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    if (listen_fd_ < 0) {
        throw IoFailure(std::string("socket: ") + std::strerror(errno));
    }
    const int one = 1;
    ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));

    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    addr.sin_port = htons(port);
    if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) < 0) {
        const std::string message = std::strerror(errno);
        ::close(listen_fd_);
        throw IoFailure("bind: " + message);
    }
    if (::listen(listen_fd_, 16) < 0) {
        const std::string message = std::strerror(errno);
        ::close(listen_fd_);
        throw IoFailure("listen: " + message);
    }
    socklen_t len = sizeof(addr);
    ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
    port_ = ntohs(addr.sin_port);
}

WireServer::~WireServer() { shutdown(); }

bool WireServer::is_mutating(std::string_view request_line) {
    const auto request = nlohmann::json::parse(request_line, nullptr, false);
    if (request.is_discarded() || !request.is_object()) return false;
    const std::string verb = request.value("verb", "");
    return verb == "REGISTER" || verb == "CONNECT" || verb == "NAVIGATE";
}

void WireServer::serve_connection(int fd) {
    std::string buffer;
    char chunk[4096];
    for (;;) {
        const ssize_t n = ::recv(fd, chunk, sizeof(chunk), 0);
        if (n <= 0) break;
        buffer.append(chunk, static_cast<std::size_t>(n));

        std::size_t newline;
        while ((newline = buffer.find('\n')) != std::string::npos) {
            std::string line = buffer.substr(0, newline);
            buffer.erase(0, newline + 1);
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;

            std::string response;
            if (is_mutating(line)) {
                std::unique_lock lock(store_mutex_);
                response = handle_request(store_, config_, line);
            } else {
                std::shared_lock lock(store_mutex_);
                response = handle_request(store_, config_, line);
            }
            response += '\n';
            std::size_t sent = 0;
            while (sent < response.size()) {
                const ssize_t w = ::send(fd, response.data() + sent,
                                         response.size() - sent, MSG_NOSIGNAL);
                if (w <= 0) { ::close(fd); return; }
                sent += static_cast<std::size_t>(w);
            }
        }
    }
    ::close(fd);
}

void WireServer::run() {
    for (;;) {
        const int fd = ::accept(listen_fd_, nullptr, nullptr);
        if (fd < 0) {
            if (stopping_.load()) break;
            if (errno == EINTR) continue;
            break;
        }
        std::lock_guard guard(workers_mutex_);
        workers_.emplace_back([this, fd] { serve_connection(fd); });
    }
}

void WireServer::start() {
    accept_thread_ = std::thread([this] { run(); });
}

void WireServer::shutdown() {
    if (stopping_.exchange(true)) {
        if (accept_thread_.joinable()) accept_thread_.join();
        return;
    }
    if (listen_fd_ >= 0) {
        ::shutdown(listen_fd_, SHUT_RDWR);
        ::close(listen_fd_);
        listen_fd_ = -1;
    }
    if (accept_thread_.joinable()) accept_thread_.join();
    std::lock_guard guard(workers_mutex_);
    for (std::thread& worker : workers_) {
        if (worker.joinable()) worker.join();
    }
    workers_.clear();
}

} // namespace ondr
