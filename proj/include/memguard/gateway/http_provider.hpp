#pragma once

#include "memguard/gateway/provider.hpp"

namespace memguard {

/// POST {base_url}/chat/completions with {model, messages, temperature};
/// the completion is choices[0].message.content.
class HttpChatProvider : public ChatProvider {
public:
    explicit HttpChatProvider(ChatProviderConfig config);
    std::string complete(const ChatRequest& request) override;

private:
    ChatProviderConfig config_;
};

/// POST {endpoint}/embeddings with {model, input}; vectors are read from
/// data[i].embedding in input order.
class HttpEmbeddingProvider : public EmbeddingProvider {
public:
    explicit HttpEmbeddingProvider(EmbeddingProviderConfig config);
    std::vector<std::vector<double>> embed(const std::vector<std::string>& texts) override;
    const std::string& model_name() const override { return config_.model_name; }
    std::size_t dimension() const override { return config_.dimension; }

private:
    EmbeddingProviderConfig config_;
};

}  // namespace memguard
