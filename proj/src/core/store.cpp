#include "memguard/core/store.hpp"

#include <cstdio>

#include "memguard/core/graph.hpp"
#include "memguard/core/similarity.hpp"
#include "memguard/errors.hpp"
#include "memguard/util/digest.hpp"

namespace memguard {

TypedStoreSet::TypedStoreSet(std::size_t embedding_dimension) : dimension_(embedding_dimension) {
    if (embedding_dimension == 0) {
        throw Error(ErrorCode::dimension_mismatch, "embedding dimension must be positive");
    }
}

std::size_t TypedStoreSet::size() const {
    return stores_[0].size() + stores_[1].size() + stores_[2].size();
}

std::array<std::size_t, 3> TypedStoreSet::sizes() const {
    return {stores_[0].size(), stores_[1].size(), stores_[2].size()};
}

const MemoryAtom& TypedStoreSet::at(const std::string& id) const {
    auto it = id_index_.find(id);
    if (it == id_index_.end()) {
        throw Error(ErrorCode::unknown_id, "no atom with id '" + id + "'");
    }
    return stores_[type_index(it->second.first)][it->second.second];
}

std::vector<std::string> TypedStoreSet::all_ids() const {
    std::vector<std::string> ids;
    ids.reserve(size());
    for (const auto& store : stores_) {
        for (const auto& atom : store) ids.push_back(atom.id);
    }
    return ids;
}

std::string TypedStoreSet::mint_id(const std::string& title, const std::string& details) {
    char seq[16];
    std::snprintf(seq, sizeof(seq), "%06llu",
                  static_cast<unsigned long long>(next_sequence_++));
    return digest_hex(title + "\n" + details).substr(0, 8) + "-" + seq;
}

void TypedStoreSet::record_conversation(const std::string& conversation_id) {
    conversations_ingested_.push_back(conversation_id);
}

namespace {

void check_atom_content(const TypedStoreSet& stores, const std::string& title,
                        const std::string& details, const std::vector<double>& embedding) {
    if (title.empty() || details.empty()) {
        throw Error(ErrorCode::malformed_atom, "title and details must be non-empty");
    }
    if (embedding.size() != stores.embedding_dimension()) {
        throw Error(ErrorCode::dimension_mismatch,
                    "embedding has dimension " + std::to_string(embedding.size()) + ", store set uses " +
                        std::to_string(stores.embedding_dimension()));
    }
    if (!is_unit_vector(embedding)) {
        throw Error(ErrorCode::non_unit_embedding, "embedding is not unit-length");
    }
}

}  // namespace

std::string add_atom(TypedStoreSet& stores, KnowledgeGraph& graph, MemoryAtom atom) {
    if (atom.id.empty()) {
        throw Error(ErrorCode::malformed_atom, "atom id must be non-empty");
    }
    if (stores.contains(atom.id)) {
        throw Error(ErrorCode::duplicate_id, "atom '" + atom.id + "' already exists");
    }
    check_atom_content(stores, atom.title, atom.details, atom.embedding);

    auto& store = stores.stores_[type_index(atom.mem_type)];
    stores.id_index_.emplace(atom.id, std::make_pair(atom.mem_type, store.size()));
    store.push_back(std::move(atom));
    graph.register_node(store.back().id);
    return store.back().id;
}

const MemoryAtom& update_atom(TypedStoreSet& stores, const std::string& id,
                              const std::string& new_title, const std::string& new_details,
                              std::vector<double> new_embedding, const std::string& updated_at) {
    auto it = stores.id_index_.find(id);
    if (it == stores.id_index_.end()) {
        throw Error(ErrorCode::unknown_id, "no atom with id '" + id + "'");
    }
    check_atom_content(stores, new_title, new_details, new_embedding);

    MemoryAtom& atom = stores.stores_[type_index(it->second.first)][it->second.second];
    atom.revisions.push_back({atom.details, embedding_digest(atom.embedding), updated_at});
    atom.title = new_title;
    atom.details = new_details;
    atom.embedding = std::move(new_embedding);
    return atom;
}

}  // namespace memguard
