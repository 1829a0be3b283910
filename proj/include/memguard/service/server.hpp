#pragma once

#include <atomic>
#include <map>
#include <memory>
#include <shared_mutex>
#include <string>
#include <thread>

#include "memguard/core/graph.hpp"
#include "memguard/core/store.hpp"
#include "memguard/service/config.hpp"

namespace httplib {
class Server;
}

namespace memguard {

/// HTTP front end over one store set. Reader-writer discipline: retrieval
/// endpoints share the state lock, ingest takes it exclusively and
/// persists a snapshot before releasing.
class MemoryService {
public:
    explicit MemoryService(ServiceConfig config);
    ~MemoryService();

    MemoryService(const MemoryService&) = delete;
    MemoryService& operator=(const MemoryService&) = delete;

    /// Binds and serves on a background thread. Port 0 picks a free port.
    /// Errors: bind-failure.
    void start();
    void stop();
    int port() const { return port_; }

    std::size_t atom_count() const;

private:
    void install_routes();

    ServiceConfig config_;
    std::shared_ptr<ProviderGateway> gateway_;

    mutable std::shared_mutex state_mutex_;
    TypedStoreSet stores_;
    KnowledgeGraph graph_;

    struct EvalRun {
        std::string status;  // running | done | failed
        std::string report_path;
        std::string error;
    };
    std::mutex eval_mutex_;
    std::map<std::string, EvalRun> eval_runs_;
    std::atomic<int> next_run_id_{1};
    std::vector<std::thread> eval_threads_;

    std::unique_ptr<httplib::Server> http_;
    std::thread serve_thread_;
    int port_ = 0;
};

}  // namespace memguard
