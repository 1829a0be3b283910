#include "memguard/gateway/embedding_cache.hpp"

#include <nlohmann/json.hpp>

#include "memguard/errors.hpp"
#include "memguard/util/fs.hpp"

namespace memguard {

namespace {
constexpr int kCacheFormatVersion = 1;
}

EmbeddingCache::EmbeddingCache(std::filesystem::path file) : file_(std::move(file)) {
    if (!std::filesystem::exists(file_)) return;
    auto parsed = nlohmann::json::parse(read_file(file_), nullptr, false);
    if (parsed.is_discarded() || !parsed.is_object() ||
        parsed.value("format_version", 0) != kCacheFormatVersion || !parsed.contains("entries")) {
        throw Error(ErrorCode::parse_error, "embedding cache '" + file_.string() + "' is not readable");
    }
    for (const auto& [key, value] : parsed.at("entries").items()) {
        entries_[key] = value.get<std::vector<double>>();
    }
}

std::optional<std::vector<double>> EmbeddingCache::lookup(const std::string& key) const {
    std::shared_lock lock(mutex_);
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void EmbeddingCache::insert(const std::string& key, std::vector<double> vector) {
    std::unique_lock lock(mutex_);
    auto [it, inserted] = entries_.emplace(key, std::move(vector));
    if (inserted) dirty_ = true;
}

std::size_t EmbeddingCache::size() const {
    std::shared_lock lock(mutex_);
    return entries_.size();
}

void EmbeddingCache::flush() {
    std::unique_lock lock(mutex_);
    if (file_.empty() || !dirty_) return;
    nlohmann::json doc;
    doc["format_version"] = kCacheFormatVersion;
    doc["entries"] = nlohmann::json::object();
    for (const auto& [key, vec] : entries_) doc["entries"][key] = vec;
    write_file_atomic(file_, doc.dump());
    dirty_ = false;
}

}  // namespace memguard
