#include "memguard/gateway/mock.hpp"

#include <sstream>

#include "memguard/core/similarity.hpp"
#include "memguard/errors.hpp"
#include "memguard/util/digest.hpp"

namespace memguard {

void MockChatProvider::push(TemplateId id, std::string completion) {
    std::lock_guard lock(mutex_);
    script_[id].push_back(std::move(completion));
}

std::string MockChatProvider::complete(const ChatRequest& request) {
    std::lock_guard lock(mutex_);
    recorded_.push_back(request);
    auto it = script_.find(request.template_id);
    if (it == script_.end()) {
        throw Error(ErrorCode::unscripted_template,
                    std::string("no script for template '") + to_string(request.template_id) + "'");
    }
    std::size_t& cursor = cursor_[request.template_id];
    if (cursor >= it->second.size()) {
        throw Error(ErrorCode::script_exhausted,
                    std::string("script for '") + to_string(request.template_id) + "' has " +
                        std::to_string(it->second.size()) + " completions, all consumed");
    }
    return it->second[cursor++];
}

std::size_t MockChatProvider::calls(TemplateId id) const {
    std::lock_guard lock(mutex_);
    std::size_t n = 0;
    for (const auto& r : recorded_) {
        if (r.template_id == id) ++n;
    }
    return n;
}

MockEmbeddingProvider::MockEmbeddingProvider(std::size_t dimension, std::string model_name)
    : dimension_(dimension), model_name_(std::move(model_name)) {
    if (dimension_ == 0) {
        throw Error(ErrorCode::dimension_mismatch, "mock embedding dimension must be positive");
    }
}

std::vector<double> MockEmbeddingProvider::embed_text(const std::string& text) const {
    std::vector<double> acc(dimension_, 0.0);
    std::istringstream tokens(text);
    std::string token;
    bool any = false;
    while (tokens >> token) {
        any = true;
        Splitmix64 rng(fnv1a64(token));
        for (double& x : acc) x += rng.next_signed_unit();
    }
    if (!any) {
        // whitespace-only text still gets a stable vector
        Splitmix64 rng(fnv1a64(text));
        for (double& x : acc) x += rng.next_signed_unit();
    }
    return l2_normalize(std::move(acc));
}

std::vector<std::vector<double>> MockEmbeddingProvider::embed(
    const std::vector<std::string>& texts) {
    std::vector<std::vector<double>> out;
    out.reserve(texts.size());
    for (const auto& t : texts) out.push_back(embed_text(t));
    return out;
}

}  // namespace memguard
