#pragma once

#include <map>
#include <mutex>
#include <vector>

#include "memguard/gateway/provider.hpp"

namespace memguard {

/// Plays back canned completions per template id, in order, and records
/// every request it sees so tests can assert on the rendered prompts.
class MockChatProvider : public ChatProvider {
public:
    using Script = std::map<TemplateId, std::vector<std::string>>;

    MockChatProvider() = default;
    explicit MockChatProvider(Script script) : script_(std::move(script)) {}

    void push(TemplateId id, std::string completion);

    /// Errors: unscripted-template, script-exhausted.
    std::string complete(const ChatRequest& request) override;

    const std::vector<ChatRequest>& recorded() const { return recorded_; }
    std::size_t calls(TemplateId id) const;

private:
    Script script_;
    std::map<TemplateId, std::size_t> cursor_;
    std::vector<ChatRequest> recorded_;
    mutable std::mutex mutex_;
};

/// Deterministic offline embedder: a bag-of-tokens hash embedding. Each
/// whitespace token seeds a pseudo-random unit pattern; token vectors are
/// summed and L2-normalized, so texts sharing words land close together.
/// Stable across runs, platforms, and process restarts.
class MockEmbeddingProvider : public EmbeddingProvider {
public:
    explicit MockEmbeddingProvider(std::size_t dimension, std::string model_name = "mock-embed");

    std::vector<std::vector<double>> embed(const std::vector<std::string>& texts) override;
    const std::string& model_name() const override { return model_name_; }
    std::size_t dimension() const override { return dimension_; }

    /// The deterministic embedding of one text (already unit-length).
    std::vector<double> embed_text(const std::string& text) const;

private:
    std::size_t dimension_;
    std::string model_name_;
};

}  // namespace memguard
