#pragma once

#include <array>
#include <nlohmann/json.hpp>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "memguard/core/graph.hpp"
#include "memguard/core/store.hpp"
#include "memguard/gateway/gateway.hpp"

namespace memguard {

/// Soft-router confidence per memory type; non-negative, sums to 1.
struct RoutingWeights {
    std::array<double, 3> w = {0.0, 0.0, 0.0};

    double get(MemoryType type) const { return w[type_index(type)]; }
    double& get(MemoryType type) { return w[type_index(type)]; }
    double sum() const { return w[0] + w[1] + w[2]; }
};

/// Integer per-type retrieval quotas. Sums to min(total budget, capacity).
struct BudgetAllocation {
    std::array<int, 3> k = {0, 0, 0};
    int total = 0;

    int get(MemoryType type) const { return k[type_index(type)]; }
    int sum() const { return k[0] + k[1] + k[2]; }
};

struct PrimaryHit {
    std::string id;
    MemoryType mem_type = MemoryType::semantic;
    double similarity = 0.0;
};

/// One rerankable evidence candidate: a primary hit alone (depth 0) or
/// joined with a graph neighbor through its relation chain.
struct ComposedEntry {
    std::string anchor;
    std::optional<std::string> neighbor;
    std::vector<RelationType> relation_chain;
    int depth = 0;
    std::string rendered;
    double score = 0.0;
};

struct RetrievalContext {
    std::string query;
    RoutingWeights weights_used;
    BudgetAllocation allocation_used;
    std::vector<ComposedEntry> entries;  // score-descending, length <= K

    nlohmann::json to_json(const TypedStoreSet& stores) const;
};

struct RetrieveConfig {
    int budget_k = 20;
    int h_max = 1;
    double lambda = 0.85;
    double renorm_tolerance = 0.1;
    bool anchors_in_pool = true;
};

/// Prompt-based soft routing. A weight sum within the tolerance of 1 is
/// renormalized to exactly 1.
/// Errors: empty-query, missing-type-key, negative-weight,
/// sum-out-of-tolerance, chat errors.
RoutingWeights route_query(const std::string& query, ProviderGateway& gateway,
                           double renorm_tolerance = 0.1);

/// floor(w*K) plus largest-remainder distribution of the shortfall (ties:
/// semantic > episodic > procedural), then capacity clamping with surplus
/// poured into un-clamped types by descending weight.
BudgetAllocation allocate_budget(const RoutingWeights& weights, int budget_k,
                                 const std::array<std::size_t, 3>& store_sizes);

/// Exact brute-force cosine top-k over one store. Ties: newer created_at
/// first, then id.
std::vector<PrimaryHit> search_typed(const std::vector<MemoryAtom>& store,
                                     std::span<const double> query_embedding, int k);

/// Depth-0 anchors plus BFS-expanded composed entries with hop-decayed
/// scores sim(q, rendered) * lambda^(d-1).
std::vector<ComposedEntry> expand_and_compose(const std::vector<PrimaryHit>& primaries,
                                              const KnowledgeGraph& graph,
                                              const TypedStoreSet& stores, const std::string& query,
                                              int h_max, double lambda, ProviderGateway& gateway,
                                              bool anchors_in_pool = true);

/// Global sort by score (ties: shallower depth, then anchor id, then
/// neighbor id), truncated to K.
std::vector<ComposedEntry> rerank_top_k(std::vector<ComposedEntry> entries, int budget_k);

/// The full retrieval pass: route -> allocate -> per-type search ->
/// expand/compose -> rerank.
RetrievalContext retrieve(const std::string& query, const TypedStoreSet& stores,
                          const KnowledgeGraph& graph, ProviderGateway& gateway,
                          const RetrieveConfig& config = {});

/// Serialization of a context for the answer prompt: one line per entry.
std::string render_context(const RetrievalContext& context, const TypedStoreSet& stores);

/// Grounded answer generation; returns the completion verbatim. An empty
/// context still asks the model (its abstention rules decide the reply).
std::string answer(const std::string& query, const RetrievalContext& context,
                   const TypedStoreSet& stores, ProviderGateway& gateway);

/// Composed-entry text: "anchor.details [-> label] ... neighbor.details"
/// with the paper's arrow glyph.
std::string compose_rendered_text(const std::string& anchor_details,
                                  const std::vector<RelationType>& chain,
                                  const std::string& neighbor_details);

}  // namespace memguard
