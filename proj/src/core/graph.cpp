#include "memguard/core/graph.hpp"

#include <algorithm>

#include "memguard/errors.hpp"

namespace memguard {

void KnowledgeGraph::register_node(const std::string& id) {
    nodes_.insert(id);
    adjacency_.try_emplace(id);
}

std::size_t KnowledgeGraph::edge_count() const {
    std::size_t n = 0;
    for (const auto& [node, edges] : adjacency_) n += edges.size();
    return n;
}

const std::vector<RelationEdge>& KnowledgeGraph::outgoing(const std::string& id) const {
    auto it = adjacency_.find(id);
    if (it == adjacency_.end()) {
        throw Error(ErrorCode::unknown_node, "no node '" + id + "'");
    }
    return it->second;
}

std::vector<RelationEdge> KnowledgeGraph::incident(const std::string& id) const {
    std::vector<RelationEdge> result = outgoing(id);
    for (const auto& [node, edges] : adjacency_) {
        if (node == id) continue;
        for (const auto& e : edges) {
            if (e.target == id) result.push_back(e);
        }
    }
    return result;
}

std::vector<RelationEdge> KnowledgeGraph::forward_edges() const {
    std::vector<RelationEdge> result;
    for (const auto& [node, edges] : adjacency_) {
        for (const auto& e : edges) {
            if (!e.derived_inverse) result.push_back(e);
        }
    }
    return result;
}

std::pair<RelationEdge, RelationEdge> add_edge(KnowledgeGraph& graph, const std::string& source,
                                               const std::string& target, RelationType relation,
                                               const std::string& reasoning) {
    // Canonical form stores the base label forward; an inverted relation is
    // the same link read backwards.
    std::string src = source;
    std::string dst = target;
    if (relation.inverted) {
        std::swap(src, dst);
        relation.inverted = false;
    }

    if (!graph.has_node(src)) {
        throw Error(ErrorCode::unknown_endpoint, "no node '" + src + "'");
    }
    if (!graph.has_node(dst)) {
        throw Error(ErrorCode::unknown_endpoint, "no node '" + dst + "'");
    }
    if (src == dst) {
        throw Error(ErrorCode::self_loop, "edge endpoints must differ ('" + src + "')");
    }

    auto& out = graph.adjacency_[src];
    auto existing = std::find_if(out.begin(), out.end(), [&](const RelationEdge& e) {
        return e.target == dst && e.relation == relation && !e.derived_inverse;
    });
    if (existing != out.end()) {
        auto& back = graph.adjacency_[dst];
        auto inv = std::find_if(back.begin(), back.end(), [&](const RelationEdge& e) {
            return e.target == src && e.relation == relation.inverse() && e.derived_inverse;
        });
        return {*existing, *inv};
    }

    RelationEdge forward{src, dst, relation, reasoning, false};
    RelationEdge derived{dst, src, relation.inverse(), reasoning, true};
    out.push_back(forward);
    graph.adjacency_[dst].push_back(derived);
    return {forward, derived};
}

namespace {

bool chain_less(const std::vector<RelationType>& a, const std::vector<RelationType>& b) {
    // equal lengths by construction (same BFS depth)
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        std::string an = a[i].name();
        std::string bn = b[i].name();
        if (an != bn) return an < bn;
    }
    return false;
}

}  // namespace

std::vector<NeighborHit> neighbors_within(const KnowledgeGraph& graph, const std::string& start,
                                          int h_max) {
    if (!graph.has_node(start)) {
        throw Error(ErrorCode::unknown_node, "no node '" + start + "'");
    }
    if (h_max < 1) {
        throw Error(ErrorCode::bad_request, "h_max must be >= 1");
    }

    std::vector<NeighborHit> result;
    std::set<std::string> visited{start};
    // frontier holds, per node of the current layer, the lex-smallest chain.
    // Extending per-node minima is sufficient: appending the same label to
    // two equal-length chains preserves their order.
    std::map<std::string, std::vector<RelationType>> frontier{{start, {}}};

    for (int depth = 1; depth <= h_max && !frontier.empty(); ++depth) {
        std::map<std::string, std::vector<RelationType>> next;
        for (const auto& [node, chain] : frontier) {
            for (const auto& edge : graph.outgoing(node)) {
                if (visited.count(edge.target)) continue;
                std::vector<RelationType> candidate = chain;
                candidate.push_back(edge.relation);
                auto it = next.find(edge.target);
                if (it == next.end() || chain_less(candidate, it->second)) {
                    next[edge.target] = std::move(candidate);
                }
            }
        }
        for (auto& [node, chain] : next) {
            visited.insert(node);
            result.push_back({node, chain, depth});
        }
        frontier = std::move(next);
    }
    return result;
}

}  // namespace memguard
