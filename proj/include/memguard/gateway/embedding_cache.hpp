#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

namespace memguard {

/// Content-addressed embedding cache, optionally persisted as a JSON file
/// with a versioned header. Concurrent lookups; inserts serialize.
class EmbeddingCache {
public:
    EmbeddingCache() = default;
    /// Loads the file when it exists; flush() writes back atomically.
    explicit EmbeddingCache(std::filesystem::path file);

    std::optional<std::vector<double>> lookup(const std::string& key) const;
    void insert(const std::string& key, std::vector<double> vector);
    std::size_t size() const;

    /// No-op for in-memory caches or when nothing changed.
    void flush();

private:
    mutable std::shared_mutex mutex_;
    std::map<std::string, std::vector<double>> entries_;
    std::filesystem::path file_;
    bool dirty_ = false;
};

}  // namespace memguard
