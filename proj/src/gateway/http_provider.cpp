#include "memguard/gateway/http_provider.hpp"

#include <httplib.h>

#include <memory>
#include <nlohmann/json.hpp>

#include "memguard/errors.hpp"

namespace memguard {

namespace {

// splits "https://host[:port]/base/path" into client origin and path prefix
struct ParsedUrl {
    std::string origin;
    std::string path_prefix;
};

ParsedUrl split_url(const std::string& url) {
    auto scheme_end = url.find("://");
    std::size_t host_start = scheme_end == std::string::npos ? 0 : scheme_end + 3;
    auto path_start = url.find('/', host_start);
    if (path_start == std::string::npos) return {url, ""};
    std::string prefix = url.substr(path_start);
    while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
    return {url.substr(0, path_start), prefix};
}

nlohmann::json post_json(const std::string& base_url, const std::string& route,
                         const std::string& api_key, const nlohmann::json& body) {
    auto [origin, prefix] = split_url(base_url);
    httplib::Client client(origin);
    client.set_connection_timeout(30);
    client.set_read_timeout(120);
    httplib::Headers headers;
    if (!api_key.empty()) headers.emplace("Authorization", "Bearer " + api_key);

    auto response = client.Post(prefix + route, headers, body.dump(), "application/json");
    if (!response) {
        throw Error(ErrorCode::provider_unreachable,
                    "POST " + base_url + route + ": " + httplib::to_string(response.error()));
    }
    if (response->status < 200 || response->status >= 300) {
        throw Error(ErrorCode::provider_unreachable,
                    "POST " + base_url + route + " returned " + std::to_string(response->status) +
                        ": " + response->body);
    }
    auto parsed = nlohmann::json::parse(response->body, nullptr, false);
    if (parsed.is_discarded()) {
        throw Error(ErrorCode::provider_unreachable, "response from " + route + " is not JSON");
    }
    return parsed;
}

}  // namespace

HttpChatProvider::HttpChatProvider(ChatProviderConfig config) : config_(std::move(config)) {}

std::string HttpChatProvider::complete(const ChatRequest& request) {
    nlohmann::json body = {
        {"model", config_.model},
        {"messages", {{{"role", "user"}, {"content", request.prompt}}}},
        {"temperature", request.temperature},
    };
    auto response = post_json(config_.base_url, "/chat/completions", config_.api_key, body);
    try {
        return response.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const nlohmann::json::exception&) {
        throw Error(ErrorCode::provider_unreachable,
                    "chat response lacks choices[0].message.content");
    }
}

HttpEmbeddingProvider::HttpEmbeddingProvider(EmbeddingProviderConfig config)
    : config_(std::move(config)) {
    if (config_.dimension == 0) {
        throw Error(ErrorCode::dimension_mismatch, "embedding dimension must be positive");
    }
}

std::vector<std::vector<double>> HttpEmbeddingProvider::embed(
    const std::vector<std::string>& texts) {
    nlohmann::json body = {{"model", config_.model_name}, {"input", texts}};
    auto response = post_json(config_.endpoint, "/embeddings", config_.api_key, body);
    std::vector<std::vector<double>> out;
    try {
        const auto& data = response.at("data");
        out.reserve(data.size());
        for (const auto& item : data) {
            out.push_back(item.at("embedding").get<std::vector<double>>());
        }
    } catch (const nlohmann::json::exception&) {
        throw Error(ErrorCode::provider_unreachable, "embedding response lacks data[i].embedding");
    }
    return out;
}

}  // namespace memguard
