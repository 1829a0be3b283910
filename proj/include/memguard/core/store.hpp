#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "memguard/core/types.hpp"

namespace memguard {

class KnowledgeGraph;

/// Three type-isolated stores plus a global id index. An atom lives in
/// exactly one store; cross-type relationships exist only in the graph.
///
/// The embedding dimension is fixed for the lifetime of the store set.
/// Value semantics: copyable, which is what the write pipeline's atomic
/// commit relies on (stage on a copy, swap on success).
class TypedStoreSet {
public:
    explicit TypedStoreSet(std::size_t embedding_dimension);

    std::size_t embedding_dimension() const { return dimension_; }

    const std::vector<MemoryAtom>& store(MemoryType type) const {
        return stores_[type_index(type)];
    }
    std::size_t size(MemoryType type) const { return stores_[type_index(type)].size(); }
    std::size_t size() const;
    std::array<std::size_t, 3> sizes() const;

    bool contains(const std::string& id) const { return id_index_.count(id) > 0; }
    /// Throws unknown-id.
    const MemoryAtom& at(const std::string& id) const;

    /// All atom ids in store order (semantic, episodic, procedural).
    std::vector<std::string> all_ids() const;

    /// Mints a content-digest-prefixed, monotonically increasing id.
    std::string mint_id(const std::string& title, const std::string& details);

    std::uint64_t next_sequence() const { return next_sequence_; }
    void set_next_sequence(std::uint64_t value) { next_sequence_ = value; }

    const std::string& created_at() const { return created_at_; }
    void set_created_at(std::string value) { created_at_ = std::move(value); }

    const std::vector<std::string>& conversations_ingested() const {
        return conversations_ingested_;
    }
    void record_conversation(const std::string& conversation_id);

private:
    friend std::string add_atom(TypedStoreSet&, KnowledgeGraph&, MemoryAtom);
    friend const MemoryAtom& update_atom(TypedStoreSet&, const std::string&, const std::string&,
                                         const std::string&, std::vector<double>,
                                         const std::string&);
    friend struct StoreTestAccess;  // defined by tests to inject invariant faults

    std::size_t dimension_;
    std::array<std::vector<MemoryAtom>, 3> stores_;
    std::unordered_map<std::string, std::pair<MemoryType, std::size_t>> id_index_;
    std::uint64_t next_sequence_ = 1;
    std::string created_at_ = "1970-01-01T00:00:00Z";
    std::vector<std::string> conversations_ingested_;
};

/// Inserts the atom into the store matching its type and registers it as a
/// graph node. Returns the atom id.
/// Errors: duplicate-id, non-unit-embedding, dimension-mismatch, malformed-atom.
std::string add_atom(TypedStoreSet& stores, KnowledgeGraph& graph, MemoryAtom atom);

/// Replaces title/details/embedding of an existing atom, appending the old
/// content to its revision history. The atom keeps its id, its type, and
/// all incident graph edges.
/// Errors: unknown-id, non-unit-embedding, dimension-mismatch, malformed-atom.
const MemoryAtom& update_atom(TypedStoreSet& stores, const std::string& id,
                              const std::string& new_title, const std::string& new_details,
                              std::vector<double> new_embedding, const std::string& updated_at);

}  // namespace memguard
