#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include "memguard/gateway/gateway.hpp"
#include "memguard/gateway/mock.hpp"
#include "memguard/retrieve/engine.hpp"
#include "memguard/write/pipeline.hpp"

namespace memguard {

/// Service-wide settings: file values ("key = value" lines) with env-var
/// overrides. Defaults follow the engine defaults (N=20, K=20, lambda=0.85).
struct ServiceConfig {
    std::string listen_address = "127.0.0.1:8087";
    std::string snapshot_path;

    std::string chat_model = "gpt-4.1-mini";
    std::string chat_base_url = "https://api.openai.com/v1";
    std::string chat_api_key;
    std::string embed_model = "text-embedding-3-small";
    std::string embed_base_url = "https://api.openai.com/v1";
    std::size_t embed_dimension = 1536;
    std::string embed_cache_path;

    RetrieveConfig retrieve;
    WriteConfig write;
    bool recall_partial_counts = false;
    int eval_parallelism = 1;

    bool mock = false;
    std::string mock_script_dir;

    /// Errors: parse-error on unreadable files or unknown keys.
    static ServiceConfig load_file(const std::filesystem::path& path);

    /// MEMGUARD_CHAT_API_KEY / _CHAT_MODEL / _CHAT_BASE_URL /
    /// _EMBED_MODEL / _EMBED_BASE_URL.
    void apply_env();

    /// Errors: bad-request when a bound is violated (K >= 1, lambda in
    /// (0,1), h_max >= 0, N >= 1, dimension >= 1).
    void validate() const;
};

/// Reads <dir>/<template_id>.json files (each a JSON array of completion
/// strings) into a mock chat script.
MockChatProvider::Script load_mock_script_dir(const std::filesystem::path& dir);

/// Builds providers per the config: deterministic mocks when config.mock,
/// HTTP providers otherwise. The embedding cache attaches when configured.
std::shared_ptr<ProviderGateway> make_gateway(const ServiceConfig& config);

}  // namespace memguard
