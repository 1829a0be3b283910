#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "memguard/core/similarity.hpp"

namespace memguard::oracle {

std::array<int, 3> apportion(const std::array<double, 3>& weights, int budget_k,
                             const std::array<std::size_t, 3>& capacities) {
    std::array<double, 3> quota{};
    std::array<int, 3> ideal{};
    for (std::size_t t = 0; t < 3; ++t) {
        quota[t] = weights[t] * budget_k;
        ideal[t] = static_cast<int>(std::floor(quota[t]));
    }

    // hand out the shortfall one slot at a time, highest remainder first,
    // ties in fixed type order (stable sort on index)
    std::vector<std::size_t> by_remainder = {0, 1, 2};
    std::stable_sort(by_remainder.begin(), by_remainder.end(), [&](std::size_t a, std::size_t b) {
        return (quota[a] - std::floor(quota[a])) > (quota[b] - std::floor(quota[b]));
    });
    int shortfall = budget_k - (ideal[0] + ideal[1] + ideal[2]);
    for (int slot = 0; slot < shortfall; ++slot) {
        ideal[by_remainder[static_cast<std::size_t>(slot) % 3]] += 1;
    }

    // capacity repair, one unit at a time: clamp, then repeatedly give one
    // unit to the first non-full type in descending-weight order
    std::array<int, 3> result{};
    for (std::size_t t = 0; t < 3; ++t) {
        result[t] = std::min(ideal[t], static_cast<int>(capacities[t]));
    }
    long long capacity_total = 0;
    for (std::size_t t = 0; t < 3; ++t) capacity_total += static_cast<long long>(capacities[t]);
    int target = static_cast<int>(std::min<long long>(budget_k, capacity_total));

    std::vector<std::size_t> by_weight = {0, 1, 2};
    std::stable_sort(by_weight.begin(), by_weight.end(),
                     [&](std::size_t a, std::size_t b) { return weights[a] > weights[b]; });
    while (result[0] + result[1] + result[2] < target) {
        for (std::size_t t : by_weight) {
            if (result[t] < static_cast<int>(capacities[t])) {
                result[t] += 1;
                break;
            }
        }
    }
    return result;
}

std::vector<LabeledEdge> edge_list(const KnowledgeGraph& graph) {
    std::vector<LabeledEdge> edges;
    for (const auto& [node, outgoing] : graph.adjacency()) {
        for (const auto& e : outgoing) {
            edges.push_back({e.source, e.target, e.relation.name()});
        }
    }
    return edges;
}

namespace {

void enumerate_paths(const std::vector<LabeledEdge>& edges, const std::string& node,
                     std::vector<std::string>& on_path_chain, std::set<std::string>& on_path_nodes,
                     int depth, int h_max,
                     std::map<std::string, std::pair<int, std::vector<std::string>>>& best) {
    if (depth >= h_max) return;
    for (const auto& e : edges) {
        if (e.source != node || on_path_nodes.count(e.target)) continue;
        on_path_chain.push_back(e.label);
        int d = depth + 1;
        auto it = best.find(e.target);
        if (it == best.end() || d < it->second.first ||
            (d == it->second.first && on_path_chain < it->second.second)) {
            best[e.target] = {d, on_path_chain};
        }
        on_path_nodes.insert(e.target);
        enumerate_paths(edges, e.target, on_path_chain, on_path_nodes, d, h_max, best);
        on_path_nodes.erase(e.target);
        on_path_chain.pop_back();
    }
}

}  // namespace

std::vector<PathHit> reachable_paths(const std::vector<LabeledEdge>& edges,
                                     const std::string& start, int h_max) {
    std::map<std::string, std::pair<int, std::vector<std::string>>> best;
    std::vector<std::string> chain;
    std::set<std::string> on_path{start};
    enumerate_paths(edges, start, chain, on_path, 0, h_max, best);

    std::vector<PathHit> hits;
    for (const auto& [node, entry] : best) {
        hits.push_back({node, entry.second, entry.first});
    }
    std::sort(hits.begin(), hits.end(), [](const PathHit& a, const PathHit& b) {
        if (a.depth != b.depth) return a.depth < b.depth;
        return a.node < b.node;
    });
    return hits;
}

std::vector<OracleEntry> retrieval(const std::array<double, 3>& raw_weights,
                                   const std::string& query, const TypedStoreSet& stores,
                                   const KnowledgeGraph& graph, ProviderGateway& gateway,
                                   int budget_k, int h_max, double lambda, bool anchors_in_pool) {
    // renormalize exactly like the routing contract: divide by the sum
    double weight_sum = raw_weights[0] + raw_weights[1] + raw_weights[2];
    std::array<double, 3> weights = {raw_weights[0] / weight_sum, raw_weights[1] / weight_sum,
                                     raw_weights[2] / weight_sum};
    auto allocation = apportion(weights, budget_k, stores.sizes());

    auto query_embedding = stores.size() > 0 ? gateway.embed_one(query) : std::vector<double>{};

    struct Anchor {
        std::string id;
        double similarity;
    };
    std::vector<Anchor> anchors;
    for (MemoryType type : kMemoryTypes) {
        struct Ranked {
            std::string id;
            std::string created_at;
            double similarity;
        };
        std::vector<Ranked> ranked;
        for (const auto& atom : stores.store(type)) {
            ranked.push_back({atom.id, atom.created_at, cosine_sim(query_embedding, atom.embedding)});
        }
        std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
            if (a.similarity != b.similarity) return a.similarity > b.similarity;
            if (a.created_at != b.created_at) return a.created_at > b.created_at;
            return a.id < b.id;
        });
        int quota = allocation[type_index(type)];
        for (int i = 0; i < quota && i < static_cast<int>(ranked.size()); ++i) {
            anchors.push_back({ranked[static_cast<std::size_t>(i)].id,
                               ranked[static_cast<std::size_t>(i)].similarity});
        }
    }

    auto edges = edge_list(graph);
    std::vector<OracleEntry> pool;
    std::vector<std::string> to_embed;
    for (const auto& anchor : anchors) {
        const auto& anchor_atom = stores.at(anchor.id);
        if (anchors_in_pool) {
            pool.push_back({anchor.id, std::nullopt, {}, 0, anchor_atom.details, anchor.similarity});
        }
        if (h_max < 1) continue;
        for (const auto& hit : reachable_paths(edges, anchor.id, h_max)) {
            OracleEntry entry;
            entry.anchor = anchor.id;
            entry.neighbor = hit.node;
            entry.chain = hit.chain;
            entry.depth = hit.depth;
            entry.rendered = anchor_atom.details;
            for (const auto& label : hit.chain) entry.rendered += " [→ " + label + "]";
            entry.rendered += " " + stores.at(hit.node).details;
            to_embed.push_back(entry.rendered);
            pool.push_back(std::move(entry));
        }
    }

    if (!to_embed.empty()) {
        auto vectors = gateway.embed_batch(to_embed);
        std::size_t next = 0;
        for (auto& entry : pool) {
            if (!entry.neighbor) continue;
            entry.score =
                cosine_sim(query_embedding, vectors[next++]) * std::pow(lambda, entry.depth - 1);
        }
    }

    std::map<std::pair<std::string, std::string>, OracleEntry> dedup;
    std::vector<std::pair<std::string, std::string>> order;
    for (auto& entry : pool) {
        auto key = std::make_pair(entry.anchor, entry.neighbor.value_or(""));
        auto it = dedup.find(key);
        if (it == dedup.end()) {
            order.push_back(key);
            dedup.emplace(key, std::move(entry));
        } else if (entry.score > it->second.score) {
            it->second = std::move(entry);
        }
    }
    std::vector<OracleEntry> entries;
    for (const auto& key : order) entries.push_back(dedup.at(key));

    std::sort(entries.begin(), entries.end(), [](const OracleEntry& a, const OracleEntry& b) {
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

}  // namespace memguard::oracle
