#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "memguard/gateway/template.hpp"

namespace memguard {

struct ChatRequest {
    TemplateId template_id = TemplateId::extraction;  // audit + mock script routing
    std::string prompt;
    double temperature = 0.0;
    int max_retries = 2;
};

class ChatProvider {
public:
    virtual ~ChatProvider() = default;
    /// Returns the raw completion text.
    virtual std::string complete(const ChatRequest& request) = 0;
};

class EmbeddingProvider {
public:
    virtual ~EmbeddingProvider() = default;
    virtual std::vector<std::vector<double>> embed(const std::vector<std::string>& texts) = 0;
    virtual const std::string& model_name() const = 0;
    virtual std::size_t dimension() const = 0;
};

struct ChatProviderConfig {
    std::string model = "gpt-4.1-mini";
    std::string base_url = "https://api.openai.com/v1";
    std::string api_key;
};

struct EmbeddingProviderConfig {
    std::string model_name = "text-embedding-3-small";
    std::size_t dimension = 1536;
    std::string endpoint = "https://api.openai.com/v1";
    std::optional<std::string> cache_path;
    std::string api_key;
};

}  // namespace memguard
