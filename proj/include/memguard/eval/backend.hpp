#pragma once

#include <memory>
#include <string>
#include <vector>

#include "memguard/core/graph.hpp"
#include "memguard/core/store.hpp"
#include "memguard/gateway/gateway.hpp"
#include "memguard/retrieve/engine.hpp"
#include "memguard/write/conversation.hpp"
#include "memguard/write/pipeline.hpp"

namespace memguard {

struct BackendMemory {
    std::string conversation_id;
    std::string text;
};

/// What the evaluation harness needs from a memory system. Kept minimal so
/// reference backends run the same suite unmodified.
class MemoryBackend {
public:
    virtual ~MemoryBackend() = default;
    virtual std::string name() const = 0;
    virtual void ingest(const Conversation& conversation) = 0;
    virtual std::vector<BackendMemory> memories() const = 0;
    virtual std::vector<std::string> retrieve(const std::string& query) = 0;
    virtual std::string answer(const std::string& query) = 0;
};

/// The engine under test: typed stores, graph, write pipeline, routing
/// retrieval.
class MemguardBackend : public MemoryBackend {
public:
    MemguardBackend(std::shared_ptr<ProviderGateway> gateway, WriteConfig write_config = {},
                    RetrieveConfig retrieve_config = {});

    std::string name() const override { return "memguard"; }
    void ingest(const Conversation& conversation) override;
    std::vector<BackendMemory> memories() const override;
    std::vector<std::string> retrieve(const std::string& query) override;
    std::string answer(const std::string& query) override;

    const TypedStoreSet& stores() const { return stores_; }
    const KnowledgeGraph& graph() const { return graph_; }

private:
    std::shared_ptr<ProviderGateway> gateway_;
    WriteConfig write_config_;
    RetrieveConfig retrieve_config_;
    TypedStoreSet stores_;
    KnowledgeGraph graph_;
};

/// Reference baseline: every message becomes one flat memory; retrieval is
/// plain cosine top-k with no typing and no graph.
class FlatStoreBackend : public MemoryBackend {
public:
    FlatStoreBackend(std::shared_ptr<ProviderGateway> gateway, int top_k = 20);

    std::string name() const override { return "flat"; }
    void ingest(const Conversation& conversation) override;
    std::vector<BackendMemory> memories() const override;
    std::vector<std::string> retrieve(const std::string& query) override;
    std::string answer(const std::string& query) override;

private:
    std::shared_ptr<ProviderGateway> gateway_;
    int top_k_;
    std::vector<BackendMemory> memories_;
    std::vector<std::vector<double>> embeddings_;
};

}  // namespace memguard
