#pragma once

#include <filesystem>
#include <nlohmann/json.hpp>
#include <string>
#include <utility>
#include <vector>

#include "memguard/core/graph.hpp"
#include "memguard/core/store.hpp"

namespace memguard {

inline constexpr int kSnapshotFormatVersion = 1;

struct IntegrityViolation {
    std::string invariant;  // e.g. "type-isolation", "inverse-closure"
    std::string detail;
};

/// Checks type isolation, id uniqueness, graph/store node consistency,
/// inverse closure, and unit-norm embeddings. Pure; violations are data.
std::vector<IntegrityViolation> verify_integrity(const TypedStoreSet& stores,
                                                 const KnowledgeGraph& graph);

/// Snapshot document: atoms sectioned by type, forward edges only (derived
/// inverses are regenerated on load).
nlohmann::json snapshot_to_json(const TypedStoreSet& stores, const KnowledgeGraph& graph);

/// Atomic write (temp file + rename). Returns bytes written.
/// Errors: io-failure, path-not-writable.
std::size_t save_snapshot(const TypedStoreSet& stores, const KnowledgeGraph& graph,
                          const std::filesystem::path& path);

/// Errors: parse-error, version-mismatch, integrity-violation.
std::pair<TypedStoreSet, KnowledgeGraph> snapshot_from_json(const nlohmann::json& doc);
std::pair<TypedStoreSet, KnowledgeGraph> load_snapshot(const std::filesystem::path& path);

}  // namespace memguard
