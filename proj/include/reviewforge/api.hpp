#pragma once

// Read-only HTTP API over a results-store snapshot. Routing and response
// bodies live in handle_get so they can be exercised without a socket;
// ApiServer only wires them to cpp-httplib.

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>

#include "reviewforge/summary.hpp"

namespace reviewforge {

struct ApiResponse {
    int status = 200;
    std::string body;
};

using QueryParams = std::multimap<std::string, std::string>;

inline constexpr std::size_t kDefaultPageLimit = 50;
inline constexpr std::size_t kMaxPageLimit = 1000;

/// Dispatches a GET for an already percent-decoded path.
ApiResponse handle_get(const ResultsStore& store, std::string_view path, const QueryParams& query = {});

/// {"error": {"status", "code", "message"}}
std::string error_body(int status, std::string_view code, std::string_view message);

/// Holds the snapshot being served. Readers take a shared_ptr copy, so a swap
/// never disturbs a request already in flight.
class SnapshotHolder {
public:
    explicit SnapshotHolder(std::shared_ptr<const ResultsStore> initial);

    std::shared_ptr<const ResultsStore> current() const;
    void swap(std::shared_ptr<const ResultsStore> next);
    /// Loads dir when its snapshot id differs from the one served. Returns
    /// true on a swap; a store that fails verification is left unserved.
    bool reload_if_changed(const std::filesystem::path& dir);

private:
    mutable std::mutex mutex_;
    std::shared_ptr<const ResultsStore> snapshot_;
};

class ApiServer {
public:
    explicit ApiServer(SnapshotHolder& snapshots);
    ~ApiServer();
    ApiServer(const ApiServer&) = delete;
    ApiServer& operator=(const ApiServer&) = delete;

    /// Port 0 picks a free port (see port()). listen_after_bind() blocks until stop().
    bool bind(const std::string& host, int port);
    void listen_after_bind();
    int port() const { return port_; }
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    int port_ = -1;
};

}  // namespace reviewforge
