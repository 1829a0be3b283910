#include "memguard/retrieve/engine.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "memguard/core/similarity.hpp"
#include "memguard/errors.hpp"

namespace memguard {

namespace {

using nlohmann::json;

std::string chain_text(const std::vector<RelationType>& chain, const char* separator) {
    std::string out;
    for (const auto& r : chain) {
        if (!out.empty()) out += separator;
        out += r.name();
    }
    return out;
}

}  // namespace

nlohmann::json RetrievalContext::to_json(const TypedStoreSet& stores) const {
    json entries_json = json::array();
    for (const auto& e : entries) {
        json item = {
            {"anchor", e.anchor},
            {"anchor_type", to_string(stores.at(e.anchor).mem_type)},
            {"depth", e.depth},
            {"relations", chain_text(e.relation_chain, " -> ")},
            {"rendered", e.rendered},
            {"score", e.score},
        };
        if (e.neighbor) item["neighbor"] = *e.neighbor;
        entries_json.push_back(std::move(item));
    }
    return json{
        {"query", query},
        {"weights", {{"semantic", weights_used.w[0]},
                     {"episodic", weights_used.w[1]},
                     {"procedural", weights_used.w[2]}}},
        {"allocation", {{"semantic", allocation_used.k[0]},
                        {"episodic", allocation_used.k[1]},
                        {"procedural", allocation_used.k[2]},
                        {"total", allocation_used.total}}},
        {"entries", entries_json},
    };
}

RoutingWeights route_query(const std::string& query, ProviderGateway& gateway,
                           double renorm_tolerance) {
    if (query.empty()) {
        throw Error(ErrorCode::empty_query, "query must be non-empty");
    }
    auto response =
        gateway.invoke_chat_json(TemplateId::routing, {{"user_query", query}}, {"weights"});

    const json& weights_json = response.value.at("weights");
    if (!weights_json.is_object()) {
        throw Error(ErrorCode::missing_type_key, "weights is not an object");
    }
    RoutingWeights weights;
    for (MemoryType type : kMemoryTypes) {
        const char* key = to_string(type);
        if (!weights_json.contains(key) || !weights_json.at(key).is_number()) {
            throw Error(ErrorCode::missing_type_key,
                        std::string("weights lacks numeric '") + key + "'");
        }
        double value = weights_json.at(key).get<double>();
        if (value < 0.0) {
            throw Error(ErrorCode::negative_weight,
                        std::string(key) + " weight is negative (" + std::to_string(value) + ")");
        }
        weights.get(type) = value;
    }
    double sum = weights.sum();
    if (std::abs(sum - 1.0) > renorm_tolerance) {
        throw Error(ErrorCode::sum_out_of_tolerance,
                    "weights sum to " + std::to_string(sum) + ", outside 1 +/- " +
                        std::to_string(renorm_tolerance));
    }
    for (double& w : weights.w) w /= sum;
    return weights;
}

BudgetAllocation allocate_budget(const RoutingWeights& weights, int budget_k,
                                 const std::array<std::size_t, 3>& store_sizes) {
    if (budget_k < 1) {
        throw Error(ErrorCode::bad_request, "budget K must be >= 1");
    }

    BudgetAllocation allocation;
    allocation.total = budget_k;

    std::array<double, 3> quota;
    std::array<double, 3> remainder;
    int floored = 0;
    for (std::size_t t = 0; t < 3; ++t) {
        quota[t] = weights.w[t] * budget_k;
        allocation.k[t] = static_cast<int>(std::floor(quota[t]));
        remainder[t] = quota[t] - allocation.k[t];
        floored += allocation.k[t];
    }

    // Largest-remainder distribution of the shortfall; stable sort keeps
    // the semantic > episodic > procedural tie order.
    std::array<std::size_t, 3> ranked = {0, 1, 2};
    std::stable_sort(ranked.begin(), ranked.end(),
                     [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
    for (int slot = 0; slot < budget_k - floored; ++slot) {
        allocation.k[ranked[static_cast<std::size_t>(slot) % 3]] += 1;
    }

    // Capacity repair: clamp overfull types, pour the surplus into
    // un-clamped types by descending weight (same tie order).
    long long capacity = 0;
    for (std::size_t t = 0; t < 3; ++t) capacity += static_cast<long long>(store_sizes[t]);
    int target = static_cast<int>(std::min<long long>(budget_k, capacity));

    for (std::size_t t = 0; t < 3; ++t) {
        allocation.k[t] = std::min(allocation.k[t], static_cast<int>(store_sizes[t]));
    }
    std::array<std::size_t, 3> by_weight = {0, 1, 2};
    std::stable_sort(by_weight.begin(), by_weight.end(),
                     [&](std::size_t a, std::size_t b) { return weights.w[a] > weights.w[b]; });
    int surplus = target - allocation.sum();
    for (std::size_t t : by_weight) {
        if (surplus <= 0) break;
        int room = static_cast<int>(store_sizes[t]) - allocation.k[t];
        int give = std::min(room, surplus);
        allocation.k[t] += give;
        surplus -= give;
    }
    return allocation;
}

std::vector<PrimaryHit> search_typed(const std::vector<MemoryAtom>& store,
                                     std::span<const double> query_embedding, int k) {
    if (k <= 0 || store.empty()) return {};

    struct Scored {
        const MemoryAtom* atom;
        double similarity;
    };
    std::vector<Scored> scored;
    scored.reserve(store.size());
    for (const auto& atom : store) {
        scored.push_back({&atom, cosine_sim(query_embedding, atom.embedding)});
    }
    std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
        if (a.similarity != b.similarity) return a.similarity > b.similarity;
        if (a.atom->created_at != b.atom->created_at) return a.atom->created_at > b.atom->created_at;
        return a.atom->id < b.atom->id;
    });
    if (static_cast<int>(scored.size()) > k) scored.resize(static_cast<std::size_t>(k));

    std::vector<PrimaryHit> hits;
    hits.reserve(scored.size());
    for (const auto& s : scored) {
        hits.push_back({s.atom->id, s.atom->mem_type, s.similarity});
    }
    return hits;
}

std::string compose_rendered_text(const std::string& anchor_details,
                                  const std::vector<RelationType>& chain,
                                  const std::string& neighbor_details) {
    std::string out = anchor_details;
    for (const auto& r : chain) out += " [→ " + r.name() + "]";
    out += " " + neighbor_details;
    return out;
}

std::vector<ComposedEntry> expand_and_compose(const std::vector<PrimaryHit>& primaries,
                                              const KnowledgeGraph& graph,
                                              const TypedStoreSet& stores, const std::string& query,
                                              int h_max, double lambda, ProviderGateway& gateway,
                                              bool anchors_in_pool) {
    if (lambda <= 0.0 || lambda >= 1.0) {
        throw Error(ErrorCode::bad_request, "lambda must lie in (0, 1)");
    }
    if (h_max < 0) {
        throw Error(ErrorCode::bad_request, "h_max must be >= 0");
    }

    std::vector<ComposedEntry> pool;
    std::vector<std::string> texts;  // rendered composed texts to embed

    for (const auto& primary : primaries) {
        const MemoryAtom& anchor = stores.at(primary.id);
        if (anchors_in_pool) {
            ComposedEntry entry;
            entry.anchor = primary.id;
            entry.rendered = anchor.details;
            entry.score = primary.similarity;  // no decay at depth 0
            pool.push_back(std::move(entry));
        }
        if (h_max < 1) continue;
        for (const auto& hit : neighbors_within(graph, primary.id, h_max)) {
            ComposedEntry entry;
            entry.anchor = primary.id;
            entry.neighbor = hit.node;
            entry.relation_chain = hit.chain;
            entry.depth = hit.depth;
            entry.rendered =
                compose_rendered_text(anchor.details, hit.chain, stores.at(hit.node).details);
            texts.push_back(entry.rendered);
            pool.push_back(std::move(entry));
        }
    }

    if (!texts.empty()) {
        auto query_embedding = gateway.embed_one(query);
        auto vectors = gateway.embed_batch(texts);
        std::size_t next = 0;
        for (auto& entry : pool) {
            if (!entry.neighbor) continue;
            double sim = cosine_sim(query_embedding, vectors[next++]);
            entry.score = sim * std::pow(lambda, entry.depth - 1);
        }
    }

    // Same (anchor, neighbor) pair reachable twice keeps its best score.
    std::map<std::pair<std::string, std::string>, std::size_t> best;
    std::vector<ComposedEntry> result;
    for (auto& entry : pool) {
        auto key = std::make_pair(entry.anchor, entry.neighbor.value_or(""));
        auto it = best.find(key);
        if (it == best.end()) {
            best.emplace(key, result.size());
            result.push_back(std::move(entry));
        } else if (entry.score > result[it->second].score) {
            result[it->second] = std::move(entry);
        }
    }
    return result;
}

std::vector<ComposedEntry> rerank_top_k(std::vector<ComposedEntry> entries, int budget_k) {
    if (budget_k < 1) {
        throw Error(ErrorCode::bad_request, "K must be >= 1");
    }
    std::sort(entries.begin(), entries.end(), [](const ComposedEntry& a, const ComposedEntry& b) {
        if (a.score != b.score) return a.score > b.score;
        if (a.depth != b.depth) return a.depth < b.depth;
        if (a.anchor != b.anchor) return a.anchor < b.anchor;
        return a.neighbor.value_or("") < b.neighbor.value_or("");
    });
    if (static_cast<int>(entries.size()) > budget_k) {
        entries.resize(static_cast<std::size_t>(budget_k));
    }
    return entries;
}

RetrievalContext retrieve(const std::string& query, const TypedStoreSet& stores,
                          const KnowledgeGraph& graph, ProviderGateway& gateway,
                          const RetrieveConfig& config) {
    if (query.empty()) {
        throw Error(ErrorCode::empty_query, "query must be non-empty");
    }

    RetrievalContext context;
    context.query = query;
    context.weights_used = route_query(query, gateway, config.renorm_tolerance);
    context.allocation_used =
        allocate_budget(context.weights_used, config.budget_k, stores.sizes());

    std::vector<PrimaryHit> primaries;
    if (stores.size() > 0) {
        auto query_embedding = gateway.embed_one(query);
        for (MemoryType type : kMemoryTypes) {
            auto hits = search_typed(stores.store(type), query_embedding,
                                     context.allocation_used.get(type));
            primaries.insert(primaries.end(), hits.begin(), hits.end());
        }
    }

    auto pool = expand_and_compose(primaries, graph, stores, query, config.h_max, config.lambda,
                                   gateway, config.anchors_in_pool);
    context.entries = rerank_top_k(std::move(pool), config.budget_k);
    return context;
}

std::string render_context(const RetrievalContext& context, const TypedStoreSet& stores) {
    std::string out;
    std::size_t index = 1;
    for (const auto& entry : context.entries) {
        std::string relations = entry.relation_chain.empty()
                                    ? "-"
                                    : chain_text(entry.relation_chain, " -> ");
        out += "Memory " + std::to_string(index++) + " [" +
               to_string(stores.at(entry.anchor).mem_type) + ", depth=" +
               std::to_string(entry.depth) + ", relations=" + relations + "]: " + entry.rendered +
               "\n";
    }
    if (!out.empty()) out.pop_back();
    return out;
}

std::string answer(const std::string& query, const RetrievalContext& context,
                   const TypedStoreSet& stores, ProviderGateway& gateway) {
    return gateway.complete_text(TemplateId::answer_generation,
                                 {{"retrieved context", render_context(context, stores)},
                                  {"question", query}});
}

}  // namespace memguard
