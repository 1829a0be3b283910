#include "memguard/gateway/gateway.hpp"

#include "memguard/core/similarity.hpp"
#include "memguard/errors.hpp"
#include "memguard/util/digest.hpp"

namespace memguard {

namespace {

// Balanced-brace scan starting at the first '{', aware of strings and
// escapes. Returns the candidate substring or empty.
std::string first_balanced_object(const std::string& text) {
    std::size_t start = text.find('{');
    if (start == std::string::npos) return {};
    int depth = 0;
    bool in_string = false;
    for (std::size_t i = start; i < text.size(); ++i) {
        char c = text[i];
        if (in_string) {
            if (c == '\\') {
                ++i;
            } else if (c == '"') {
                in_string = false;
            }
        } else if (c == '"') {
            in_string = true;
        } else if (c == '{') {
            ++depth;
        } else if (c == '}') {
            if (--depth == 0) return text.substr(start, i - start + 1);
        }
    }
    return {};
}

std::string fenced_block(const std::string& text) {
    std::size_t open = text.find("```");
    if (open == std::string::npos) return {};
    std::size_t body = text.find('\n', open);
    if (body == std::string::npos) return {};
    std::size_t close = text.find("```", body);
    if (close == std::string::npos) return {};
    return text.substr(body + 1, close - body - 1);
}

}  // namespace

nlohmann::json extract_json_object(const std::string& completion) {
    std::string fenced = fenced_block(completion);
    if (!fenced.empty()) {
        auto parsed = nlohmann::json::parse(fenced, nullptr, false);
        if (!parsed.is_discarded() && parsed.is_object()) return parsed;
        // a fence that holds prose around the object still counts
        std::string inner = first_balanced_object(fenced);
        if (!inner.empty()) {
            parsed = nlohmann::json::parse(inner, nullptr, false);
            if (!parsed.is_discarded() && parsed.is_object()) return parsed;
        }
        return nlohmann::json(nlohmann::json::value_t::discarded);
    }
    std::string bare = first_balanced_object(completion);
    if (!bare.empty()) {
        auto parsed = nlohmann::json::parse(bare, nullptr, false);
        if (!parsed.is_discarded() && parsed.is_object()) return parsed;
    }
    return nlohmann::json(nlohmann::json::value_t::discarded);
}

ProviderGateway::ProviderGateway(std::shared_ptr<ChatProvider> chat,
                                 std::shared_ptr<EmbeddingProvider> embedding,
                                 std::shared_ptr<EmbeddingCache> cache, int default_max_retries)
    : chat_(std::move(chat)),
      embedding_(std::move(embedding)),
      cache_(std::move(cache)),
      default_max_retries_(default_max_retries) {
    if (!cache_) cache_ = std::make_shared<EmbeddingCache>();
}

std::string ProviderGateway::render(TemplateId id,
                                    const std::map<std::string, std::string>& slots) const {
    return render_template(id, slots);
}

ChatJsonResult ProviderGateway::invoke_chat_json(const ChatRequest& request,
                                                 const std::set<std::string>& expected_keys) {
    ChatJsonResult result;
    std::string last_failure = "no completion parsed";
    ErrorCode last_code = ErrorCode::malformed_json_after_retries;
    int attempts_allowed = request.max_retries + 1;

    for (int attempt = 0; attempt < attempts_allowed; ++attempt) {
        std::string raw = chat_->complete(request);
        result.attempts.push_back(raw);

        nlohmann::json parsed = extract_json_object(raw);
        if (parsed.is_discarded()) {
            last_code = ErrorCode::malformed_json_after_retries;
            last_failure = "no parsable JSON object in completion";
            continue;
        }
        bool keys_ok = true;
        for (const auto& key : expected_keys) {
            if (!parsed.contains(key)) {
                keys_ok = false;
                last_code = ErrorCode::missing_key;
                last_failure = "completion lacks top-level key '" + key + "'";
                break;
            }
        }
        if (!keys_ok) continue;

        result.value = std::move(parsed);
        result.raw = std::move(raw);
        return result;
    }

    std::string detail = last_failure + " after " + std::to_string(attempts_allowed) +
                         " attempt(s); raw attempts follow:";
    for (const auto& a : result.attempts) detail += "\n---\n" + a;
    throw Error(last_code, detail);
}

ChatJsonResult ProviderGateway::invoke_chat_json(TemplateId id,
                                                 const std::map<std::string, std::string>& slots,
                                                 const std::set<std::string>& expected_keys) {
    ChatRequest request;
    request.template_id = id;
    request.prompt = render(id, slots);
    request.max_retries = default_max_retries_;
    return invoke_chat_json(request, expected_keys);
}

std::string ProviderGateway::complete_text(TemplateId id,
                                           const std::map<std::string, std::string>& slots) {
    ChatRequest request;
    request.template_id = id;
    request.prompt = render(id, slots);
    request.max_retries = 0;
    return chat_->complete(request);
}

std::vector<std::vector<double>> ProviderGateway::embed_batch(
    const std::vector<std::string>& texts) {
    if (texts.empty()) {
        throw Error(ErrorCode::empty_text, "embed_batch requires at least one text");
    }
    for (const auto& t : texts) {
        if (t.empty()) throw Error(ErrorCode::empty_text, "cannot embed an empty text");
    }

    std::vector<std::vector<double>> out(texts.size());
    std::vector<std::size_t> miss_positions;
    std::vector<std::string> miss_texts;
    std::vector<std::string> keys(texts.size());

    for (std::size_t i = 0; i < texts.size(); ++i) {
        keys[i] = digest_hex_wide(embedding_->model_name() + "\x1f" + texts[i]);
        if (auto hit = cache_->lookup(keys[i])) {
            out[i] = std::move(*hit);
        } else {
            miss_positions.push_back(i);
            miss_texts.push_back(texts[i]);
        }
    }

    if (!miss_texts.empty()) {
        auto vectors = embedding_->embed(miss_texts);
        if (vectors.size() != miss_texts.size()) {
            throw Error(ErrorCode::provider_unreachable,
                        "embedding provider returned " + std::to_string(vectors.size()) +
                            " vectors for " + std::to_string(miss_texts.size()) + " inputs");
        }
        for (std::size_t j = 0; j < vectors.size(); ++j) {
            auto unit = l2_normalize(std::move(vectors[j]));
            cache_->insert(keys[miss_positions[j]], unit);
            out[miss_positions[j]] = std::move(unit);
        }
        cache_->flush();
    }
    return out;
}

std::vector<double> ProviderGateway::embed_one(const std::string& text) {
    return embed_batch({text}).front();
}

void ProviderGateway::flush_cache() { cache_->flush(); }

}  // namespace memguard
