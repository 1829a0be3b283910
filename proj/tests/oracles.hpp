#pragma once

// Independent oracle implementations for the test suite. These derive
// expected values by brute force and must stay decoupled from the engine
// code paths they check: allocation is simulated one unit at a time,
// graph reachability enumerates all simple paths, retrieval recomposes
// the whole pipeline from first principles.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "memguard/core/graph.hpp"
#include "memguard/core/store.hpp"
#include "memguard/gateway/gateway.hpp"
#include "memguard/retrieve/engine.hpp"

namespace memguard::oracle {

/// Largest-remainder apportionment with capacity repair, simulated one
/// unit at a time.
std::array<int, 3> apportion(const std::array<double, 3>& weights, int budget_k,
                             const std::array<std::size_t, 3>& capacities);

struct PathHit {
    std::string node;
    std::vector<std::string> chain;  // rendered relation names
    int depth = 0;
};

/// All nodes reachable from `start` in 1..h_max hops, found by exhaustive
/// simple-path enumeration over an explicit directed edge list. Reports
/// each node at its minimal depth with the lexicographically smallest
/// label chain among its shortest paths. Sorted by (depth, node).
struct LabeledEdge {
    std::string source;
    std::string target;
    std::string label;
};
std::vector<PathHit> reachable_paths(const std::vector<LabeledEdge>& edges,
                                     const std::string& start, int h_max);

/// Flattens a graph (forward and derived edges alike) into the oracle's
/// edge-list form.
std::vector<LabeledEdge> edge_list(const KnowledgeGraph& graph);

struct OracleEntry {
    std::string anchor;
    std::optional<std::string> neighbor;
    std::vector<std::string> chain;
    int depth = 0;
    std::string rendered;
    double score = 0.0;
};

/// Exhaustive re-derivation of the full retrieval pass from raw weights:
/// renormalize, apportion, rank every atom per store, enumerate every
/// anchor x path combination, score, dedup, sort, truncate. Embeddings go
/// through the same gateway (they are fixture infrastructure, not logic
/// under test).
std::vector<OracleEntry> retrieval(const std::array<double, 3>& raw_weights,
                                   const std::string& query, const TypedStoreSet& stores,
                                   const KnowledgeGraph& graph, ProviderGateway& gateway,
                                   int budget_k, int h_max, double lambda, bool anchors_in_pool);

}  // namespace memguard::oracle
