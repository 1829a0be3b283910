#include "memguard/eval/backend.hpp"

#include <algorithm>

#include "memguard/core/similarity.hpp"
#include "memguard/errors.hpp"

namespace memguard {

MemguardBackend::MemguardBackend(std::shared_ptr<ProviderGateway> gateway,
                                 WriteConfig write_config, RetrieveConfig retrieve_config)
    : gateway_(std::move(gateway)),
      write_config_(write_config),
      retrieve_config_(retrieve_config),
      stores_(gateway_->embedding_dimension()) {}

void MemguardBackend::ingest(const Conversation& conversation) {
    ingest_conversation(conversation, stores_, graph_, *gateway_, write_config_);
}

std::vector<BackendMemory> MemguardBackend::memories() const {
    std::vector<BackendMemory> out;
    for (MemoryType type : kMemoryTypes) {
        for (const auto& atom : stores_.store(type)) {
            out.push_back({atom.source_conversation, atom.details});
        }
    }
    return out;
}

std::vector<std::string> MemguardBackend::retrieve(const std::string& query) {
    auto context = memguard::retrieve(query, stores_, graph_, *gateway_, retrieve_config_);
    std::vector<std::string> out;
    out.reserve(context.entries.size());
    for (const auto& e : context.entries) out.push_back(e.rendered);
    return out;
}

std::string MemguardBackend::answer(const std::string& query) {
    auto context = memguard::retrieve(query, stores_, graph_, *gateway_, retrieve_config_);
    return memguard::answer(query, context, stores_, *gateway_);
}

FlatStoreBackend::FlatStoreBackend(std::shared_ptr<ProviderGateway> gateway, int top_k)
    : gateway_(std::move(gateway)), top_k_(top_k) {}

void FlatStoreBackend::ingest(const Conversation& conversation) {
    if (conversation.messages.empty()) {
        throw Error(ErrorCode::empty_conversation, "conversation has no messages");
    }
    std::vector<std::string> texts;
    for (const auto& m : conversation.messages) {
        texts.push_back("[" + m.speaker + "] (" + m.timestamp + "): " + m.text);
    }
    auto vectors = gateway_->embed_batch(texts);
    for (std::size_t i = 0; i < texts.size(); ++i) {
        memories_.push_back({conversation.id, texts[i]});
        embeddings_.push_back(std::move(vectors[i]));
    }
}

std::vector<BackendMemory> FlatStoreBackend::memories() const { return memories_; }

std::vector<std::string> FlatStoreBackend::retrieve(const std::string& query) {
    if (memories_.empty()) return {};
    auto query_embedding = gateway_->embed_one(query);
    std::vector<std::pair<double, std::size_t>> scored;
    for (std::size_t i = 0; i < memories_.size(); ++i) {
        scored.emplace_back(cosine_sim(query_embedding, embeddings_[i]), i);
    }
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    std::vector<std::string> out;
    for (std::size_t i = 0; i < scored.size() && i < static_cast<std::size_t>(top_k_); ++i) {
        out.push_back(memories_[scored[i].second].text);
    }
    return out;
}

std::string FlatStoreBackend::answer(const std::string& query) {
    auto context = retrieve(query);
    std::string rendered;
    std::size_t index = 1;
    for (const auto& text : context) {
        rendered += "Memory " + std::to_string(index++) + ": " + text + "\n";
    }
    if (!rendered.empty()) rendered.pop_back();
    return gateway_->complete_text(TemplateId::answer_generation,
                                   {{"retrieved context", rendered}, {"question", query}});
}

}  // namespace memguard
