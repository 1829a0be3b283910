#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "memguard/core/types.hpp"

namespace memguard {

/// A node reachable from a BFS start point: shortest-path depth and the
/// relation labels along one deterministic shortest path.
struct NeighborHit {
    std::string node;
    std::vector<RelationType> chain;
    int depth = 0;
};

/// Directed relational graph over atom ids. Every stored link exists twice:
/// the forward edge and its derived inverse, kept in closure by add_edge.
class KnowledgeGraph {
public:
    void register_node(const std::string& id);
    bool has_node(const std::string& id) const { return nodes_.count(id) > 0; }
    std::size_t node_count() const { return nodes_.size(); }
    const std::set<std::string>& nodes() const { return nodes_; }

    /// Directed edge count, derived inverses included.
    std::size_t edge_count() const;

    /// Outgoing edges of a node (forward and derived). Throws unknown-node.
    const std::vector<RelationEdge>& outgoing(const std::string& id) const;

    /// Edges incident to a node in either direction.
    std::vector<RelationEdge> incident(const std::string& id) const;

    /// Forward (non-derived) edges in deterministic order: by source node,
    /// then insertion order. This is the serialization order.
    std::vector<RelationEdge> forward_edges() const;

    const std::map<std::string, std::vector<RelationEdge>>& adjacency() const {
        return adjacency_;
    }

private:
    friend std::pair<RelationEdge, RelationEdge> add_edge(KnowledgeGraph&, const std::string&,
                                                          const std::string&, RelationType,
                                                          const std::string&);
    friend struct GraphTestAccess;  // defined by tests to inject invariant faults

    std::set<std::string> nodes_;
    std::map<std::string, std::vector<RelationEdge>> adjacency_;
};

/// Links two registered atoms. Stores the forward edge and its derived
/// inverse; an exact repeat (same endpoints and label) is a no-op returning
/// the existing pair. A relation passed in inverted form is canonicalized
/// to the equivalent forward edge first.
/// Errors: unknown-endpoint, self-loop.
std::pair<RelationEdge, RelationEdge> add_edge(KnowledgeGraph& graph, const std::string& source,
                                               const std::string& target, RelationType relation,
                                               const std::string& reasoning);

/// Every node reachable from `start` within 1..h_max hops over the
/// symmetrized graph (forward and inverse edges alike), excluding `start`.
/// Each node appears once at its BFS distance, with the lexicographically
/// smallest label chain among its shortest paths. Sorted by (depth, node).
/// Errors: unknown-node.
std::vector<NeighborHit> neighbors_within(const KnowledgeGraph& graph, const std::string& start,
                                          int h_max);

}  // namespace memguard
