#pragma once

#include <memory>
#include <nlohmann/json.hpp>
#include <set>
#include <string>
#include <vector>

#include "memguard/gateway/embedding_cache.hpp"
#include "memguard/gateway/provider.hpp"
#include "memguard/gateway/template.hpp"

namespace memguard {

struct ChatJsonResult {
    nlohmann::json value;
    std::string raw;                    // the attempt that parsed
    std::vector<std::string> attempts;  // every raw completion, audit trail
};

/// Finds the JSON object in a completion: a fenced ```json block when one
/// exists, otherwise the first balanced top-level object. Returns a
/// discarded value when neither parses.
nlohmann::json extract_json_object(const std::string& completion);

/// One front door to both providers: template rendering, JSON-validated
/// chat calls with retries, and cache-backed normalized embeddings.
class ProviderGateway {
public:
    ProviderGateway(std::shared_ptr<ChatProvider> chat,
                    std::shared_ptr<EmbeddingProvider> embedding,
                    std::shared_ptr<EmbeddingCache> cache = nullptr,
                    int default_max_retries = 2);

    std::string render(TemplateId id, const std::map<std::string, std::string>& slots) const;

    /// Invokes chat and parses the completion. Retries the same prompt on
    /// parse failures or missing keys, up to request.max_retries times.
    /// Errors: malformed-json-after-retries, missing-key, provider errors.
    ChatJsonResult invoke_chat_json(const ChatRequest& request,
                                    const std::set<std::string>& expected_top_level_keys);

    /// render + invoke in one step with the gateway's default retry count.
    ChatJsonResult invoke_chat_json(TemplateId id, const std::map<std::string, std::string>& slots,
                                    const std::set<std::string>& expected_top_level_keys);

    /// Raw completion for free-text calls (answer generation).
    std::string complete_text(TemplateId id, const std::map<std::string, std::string>& slots);

    /// One unit vector per input text, cache-backed.
    /// Errors: empty-text, provider errors.
    std::vector<std::vector<double>> embed_batch(const std::vector<std::string>& texts);
    std::vector<double> embed_one(const std::string& text);

    std::size_t embedding_dimension() const { return embedding_->dimension(); }
    ChatProvider& chat() { return *chat_; }
    EmbeddingProvider& embedding() { return *embedding_; }
    void flush_cache();

private:
    std::shared_ptr<ChatProvider> chat_;
    std::shared_ptr<EmbeddingProvider> embedding_;
    std::shared_ptr<EmbeddingCache> cache_;
    int default_max_retries_;
};

}  // namespace memguard
