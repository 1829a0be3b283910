#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "memguard/core/graph.hpp"
#include "memguard/core/store.hpp"
#include "memguard/core/types.hpp"
#include "memguard/gateway/gateway.hpp"
#include "memguard/write/conversation.hpp"

namespace memguard {

/// A not-yet-committed atom from extraction. Draft ids are 0-based and
/// consecutive, matching the atom's position.
struct DraftAtom {
    int draft_id = 0;
    MemoryType mem_type = MemoryType::semantic;
    std::string title;
    std::string details;
    EventTime event_time;
    bool uncertain = false;
};

struct DraftLink {
    int source = 0;
    int target = 0;
    RelationType::Label relation = RelationType::Label::supports;
    std::string reasoning;
};

/// An extraction item the validator refused, with the reason. Invalid LLM
/// output is dropped at item granularity and reported, never coerced.
struct RejectedItem {
    std::string item;
    std::string reason;
};

/// Raw prompt/completion exchange of one phase, kept for auditing.
struct PhaseExchange {
    std::string phase;
    std::string prompt;
    std::vector<std::string> completions;
};

struct ExtractionResult {
    std::vector<DraftAtom> atoms;
    std::vector<DraftLink> links;
    std::vector<RejectedItem> rejected;
    PhaseExchange exchange;
};

enum class WriteAction { add, update, skip };

const char* to_string(WriteAction action);

struct WriteOperation {
    int draft_id = 0;
    WriteAction action = WriteAction::add;
    std::string old_memory_id;  // required iff UPDATE
    std::string existing_id;    // required iff SKIP
};

/// Link endpoint in the operation-assignment response: either a new draft
/// (by index) or a stored memory (by id).
struct LinkEndpoint {
    bool is_draft = false;
    int draft_id = -1;
    std::string existing_id;
};

struct CrossLink {
    LinkEndpoint source;
    LinkEndpoint target;
    RelationType::Label relation = RelationType::Label::supports;
    std::string reasoning;
};

struct OperationAssignment {
    std::vector<WriteOperation> operations;
    std::vector<CrossLink> cross_links;
    std::vector<RejectedItem> rejected;
    PhaseExchange exchange;
};

struct WriteReport {
    int added = 0;
    int updated = 0;
    int skipped = 0;
    int edges_added = 0;  // directed edges, derived inverses included
    int verification_additions = 0;
    std::vector<RejectedItem> rejections;
    std::vector<PhaseExchange> audit;

    nlohmann::json to_json() const;
};

struct WriteConfig {
    int candidate_n = 20;
};

/// What gets embedded for an atom.
inline std::string embedding_text(const std::string& title, const std::string& details) {
    return title + "\n" + details;
}

/// JSON array used for {{atoms_json}} / {{existing_atoms_json}}.
std::string serialize_drafts(const std::vector<DraftAtom>& drafts);

/// Phase 1+2+3: one extraction call producing typed draft atoms and links.
/// Errors: empty-conversation, malformed-json-after-retries, zero-valid-atoms.
ExtractionResult decompose(const Conversation& conversation, ProviderGateway& gateway);

/// Self-check pass. Returns only the recovered fragment; new draft ids
/// continue from |current.atoms|.
/// Errors: malformed-json-after-retries, id-collision.
ExtractionResult self_verify(const Conversation& conversation, const ExtractionResult& current,
                             ProviderGateway& gateway);

/// Phase 4+5: type-local ADD/UPDATE/SKIP assignment plus links that cross
/// the new/existing boundary. Candidates per type are the top-N existing
/// same-type memories ranked against the mean embedding of that type's
/// drafts.
/// Errors: malformed-json-after-retries, operation-for-unknown-draft,
/// invalid-operation.
OperationAssignment assign_operations(const std::vector<DraftAtom>& drafts,
                                      const TypedStoreSet& stores, ProviderGateway& gateway,
                                      int candidate_n, const Conversation& conversation);

/// Applies the operations and materializes all links. Atomic: on any error
/// the store set and graph are left untouched.
/// Errors: unknown-old-memory-id, unknown-existing-id, provider errors.
WriteReport commit(const std::vector<WriteOperation>& operations,
                   const std::vector<DraftLink>& links, const std::vector<CrossLink>& cross_links,
                   const std::vector<DraftAtom>& drafts, TypedStoreSet& stores,
                   KnowledgeGraph& graph, ProviderGateway& gateway,
                   const Conversation& conversation);

/// decompose -> self_verify -> assign_operations -> commit.
WriteReport ingest_conversation(const Conversation& conversation, TypedStoreSet& stores,
                                KnowledgeGraph& graph, ProviderGateway& gateway,
                                const WriteConfig& config = {});

}  // namespace memguard
