#include "memguard/write/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>

#include "memguard/core/similarity.hpp"
#include "memguard/errors.hpp"
#include "memguard/retrieve/engine.hpp"

namespace memguard {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
    auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

// tolerant accessor: missing keys and wrong types read as empty
std::string get_string(const json& obj, const char* key) {
    if (!obj.is_object() || !obj.contains(key) || !obj.at(key).is_string()) return "";
    return obj.at(key).get<std::string>();
}

std::string brief(const json& value) {
    std::string text = value.dump();
    if (text.size() > 160) text = text.substr(0, 157) + "...";
    return text;
}

/// Parses one atom object from a response. `expected_id` is the id the
/// item must claim given its array position; nullopt = accept any integer.
std::optional<DraftAtom> parse_draft(const json& item, std::optional<int> expected_id,
                                     std::vector<RejectedItem>& rejected, int* claimed_out) {
    if (!item.is_object()) {
        rejected.push_back({brief(item), "atom is not a JSON object"});
        return std::nullopt;
    }
    if (!item.contains("id") || !item.at("id").is_number_integer()) {
        rejected.push_back({brief(item), "atom lacks an integer id"});
        return std::nullopt;
    }
    int claimed = item.at("id").get<int>();
    if (claimed_out) *claimed_out = claimed;
    if (expected_id && claimed != *expected_id) {
        rejected.push_back({brief(item), "atom id " + std::to_string(claimed) +
                                             " does not match its position (expected " +
                                             std::to_string(*expected_id) + ")"});
        return std::nullopt;
    }

    std::string type_text = lower(trim(get_string(item, "type")));
    auto type = memory_type_from_string(type_text);
    if (!type) {
        rejected.push_back({brief(item), "unknown memory type '" + type_text + "'"});
        return std::nullopt;
    }
    std::string title = trim(get_string(item, "title"));
    std::string details = trim(get_string(item, "details"));
    if (title.empty() || details.empty()) {
        rejected.push_back({brief(item), "title and details must be non-empty"});
        return std::nullopt;
    }
    std::string time_text = trim(get_string(item, "time"));
    if (time_text.empty()) {
        rejected.push_back({brief(item), "time must be non-empty"});
        return std::nullopt;
    }

    DraftAtom draft;
    draft.draft_id = claimed;
    draft.mem_type = *type;
    draft.title = title;
    draft.details = details;
    draft.event_time = EventTime::from_raw(time_text);
    draft.uncertain = item.contains("uncertain") && item.at("uncertain").is_boolean()
                          ? item.at("uncertain").get<bool>()
                          : false;
    return draft;
}

/// Parses link objects against the set of known draft ids, remapping
/// endpoints through `remap` (old claimed id -> final draft id).
std::vector<DraftLink> parse_links(const json& array, const std::map<int, int>& remap,
                                   std::vector<RejectedItem>& rejected) {
    std::vector<DraftLink> links;
    if (!array.is_array()) {
        rejected.push_back({brief(array), "links is not an array"});
        return links;
    }
    for (const auto& item : array) {
        if (!item.is_object() || !item.contains("source") || !item.contains("target") ||
            !item.at("source").is_number_integer() || !item.at("target").is_number_integer()) {
            rejected.push_back({brief(item), "link needs integer source and target"});
            continue;
        }
        auto relation = relation_label_from_string(trim(get_string(item, "relation")));
        if (!relation) {
            rejected.push_back({brief(item), "unknown relation label"});
            continue;
        }
        auto src = remap.find(item.at("source").get<int>());
        auto dst = remap.find(item.at("target").get<int>());
        if (src == remap.end() || dst == remap.end()) {
            rejected.push_back({brief(item), "link references a draft id that does not exist"});
            continue;
        }
        if (src->second == dst->second) {
            rejected.push_back({brief(item), "link endpoints must differ"});
            continue;
        }
        links.push_back({src->second, dst->second, *relation, get_string(item, "reasoning")});
    }
    return links;
}

void require_conversation(const Conversation& conversation) {
    if (conversation.messages.empty()) {
        throw Error(ErrorCode::empty_conversation, "conversation has no messages");
    }
    if (conversation.timestamp.empty()) {
        throw Error(ErrorCode::empty_conversation, "conversation timestamp is required");
    }
}

json draft_to_json(const DraftAtom& draft) {
    return json{{"id", draft.draft_id},
                {"type", to_string(draft.mem_type)},
                {"title", draft.title},
                {"details", draft.details},
                {"time", draft.event_time.raw},
                {"uncertain", draft.uncertain}};
}

}  // namespace

const char* to_string(WriteAction action) {
    switch (action) {
        case WriteAction::add: return "ADD";
        case WriteAction::update: return "UPDATE";
        case WriteAction::skip: return "SKIP";
    }
    return "ADD";
}

nlohmann::json WriteReport::to_json() const {
    json rejections_json = json::array();
    for (const auto& r : rejections) {
        rejections_json.push_back({{"item", r.item}, {"reason", r.reason}});
    }
    return json{{"added", added},
                {"updated", updated},
                {"skipped", skipped},
                {"edges_added", edges_added},
                {"verification_additions", verification_additions},
                {"rejections", rejections_json}};
}

std::string serialize_drafts(const std::vector<DraftAtom>& drafts) {
    json array = json::array();
    for (const auto& d : drafts) array.push_back(draft_to_json(d));
    return array.dump(2);
}

ExtractionResult decompose(const Conversation& conversation, ProviderGateway& gateway) {
    require_conversation(conversation);

    auto response = gateway.invoke_chat_json(TemplateId::extraction,
                                             {{"conversation_timestamp", conversation.timestamp},
                                              {"messages", render_messages(conversation)}},
                                             {"atoms", "links"});

    ExtractionResult result;
    result.exchange = {"decompose", response.raw, response.attempts};

    const json& atoms = response.value.at("atoms");
    if (!atoms.is_array()) {
        throw Error(ErrorCode::zero_valid_atoms, "extraction returned no atom array");
    }
    // Track the claimed id of each accepted atom so links can be remapped
    // onto the compacted 0..m-1 id space.
    std::map<int, int> remap;
    std::set<int> seen;
    for (const auto& item : atoms) {
        int claimed = -1;
        auto draft = parse_draft(item, std::nullopt, result.rejected, &claimed);
        if (!draft) continue;
        if (seen.count(claimed)) {
            result.rejected.push_back({brief(item), "duplicate draft id"});
            continue;
        }
        seen.insert(claimed);
        draft->draft_id = static_cast<int>(result.atoms.size());
        remap[claimed] = draft->draft_id;
        result.atoms.push_back(std::move(*draft));
    }
    if (result.atoms.empty()) {
        throw Error(ErrorCode::zero_valid_atoms,
                    "no valid atoms in extraction (" + std::to_string(result.rejected.size()) +
                        " rejected)");
    }
    result.links = parse_links(response.value.at("links"), remap, result.rejected);
    return result;
}

ExtractionResult self_verify(const Conversation& conversation, const ExtractionResult& current,
                             ProviderGateway& gateway) {
    require_conversation(conversation);
    int next_id = static_cast<int>(current.atoms.size());

    auto response = gateway.invoke_chat_json(
        TemplateId::self_check,
        {{"conversation_timestamp", conversation.timestamp},
         {"messages", render_messages(conversation)},
         {"existing_atoms_json", serialize_drafts(current.atoms)},
         {"next_id", std::to_string(next_id)}},
        {"additional_atoms", "additional_links"});

    ExtractionResult fragment;
    fragment.exchange = {"self_verify", response.raw, response.attempts};

    std::map<int, int> remap;
    for (int i = 0; i < next_id; ++i) remap[i] = i;  // links may reference existing drafts

    const json& additions = response.value.at("additional_atoms");
    if (additions.is_array()) {
        int position = 0;
        for (const auto& item : additions) {
            int claimed = -1;
            int expected = next_id + position;
            auto draft = parse_draft(item, expected, fragment.rejected, &claimed);
            ++position;
            if (!draft) {
                if (claimed >= 0 && claimed < next_id) {
                    throw Error(ErrorCode::id_collision,
                                "self-check atom reuses existing draft id " +
                                    std::to_string(claimed));
                }
                continue;
            }
            int final_id = next_id + static_cast<int>(fragment.atoms.size());
            remap[claimed] = final_id;
            draft->draft_id = final_id;
            fragment.atoms.push_back(std::move(*draft));
        }
    }
    fragment.links = parse_links(response.value.at("additional_links"), remap, fragment.rejected);
    return fragment;
}

OperationAssignment assign_operations(const std::vector<DraftAtom>& drafts,
                                      const TypedStoreSet& stores, ProviderGateway& gateway,
                                      int candidate_n, const Conversation& conversation) {
    if (drafts.empty()) {
        throw Error(ErrorCode::zero_valid_atoms, "no drafts to assign operations for");
    }
    if (candidate_n < 1) {
        throw Error(ErrorCode::bad_request, "candidate count must be >= 1");
    }

    // One embedding batch covers every draft; the per-type query vector is
    // the normalized mean of that type's draft embeddings.
    std::vector<std::string> texts;
    texts.reserve(drafts.size());
    for (const auto& d : drafts) texts.push_back(embedding_text(d.title, d.details));
    auto embeddings = gateway.embed_batch(texts);

    std::map<std::string, std::string> slots = {
        {"conversation_timestamp", conversation.timestamp},
        {"atoms_json", serialize_drafts(drafts)},
    };
    const char* slot_names[3] = {"existing_semantic_memories", "existing_episodic_memories",
                                 "existing_procedural_memories"};
    for (MemoryType type : kMemoryTypes) {
        std::vector<double> mean(stores.embedding_dimension(), 0.0);
        std::size_t count = 0;
        for (std::size_t i = 0; i < drafts.size(); ++i) {
            if (drafts[i].mem_type != type) continue;
            for (std::size_t d = 0; d < mean.size(); ++d) mean[d] += embeddings[i][d];
            ++count;
        }
        json candidates = json::array();
        if (count > 0 && !stores.store(type).empty()) {
            double norm = l2_norm(mean);
            if (norm < 1e-12) mean = embeddings[0];  // degenerate cancellation
            auto query = l2_normalize(std::move(mean));
            for (const auto& hit : search_typed(stores.store(type), query, candidate_n)) {
                const MemoryAtom& atom = stores.at(hit.id);
                candidates.push_back({{"id", atom.id},
                                      {"title", atom.title},
                                      {"details", atom.details},
                                      {"time", atom.event_time.raw}});
            }
        }
        slots[slot_names[type_index(type)]] = candidates.dump(2);
    }

    auto response = gateway.invoke_chat_json(TemplateId::operation_assignment, slots,
                                             {"operations", "existing_links"});

    OperationAssignment assignment;
    assignment.exchange = {"assign_operations", response.raw, response.attempts};

    const json& operations = response.value.at("operations");
    if (!operations.is_array()) {
        throw Error(ErrorCode::invalid_operation, "operations is not an array");
    }
    std::map<int, WriteOperation> by_draft;
    for (const auto& item : operations) {
        if (!item.is_object() || !item.contains("atom_id") ||
            !item.at("atom_id").is_number_integer()) {
            throw Error(ErrorCode::operation_for_unknown_draft,
                        "operation lacks an integer atom_id: " + brief(item));
        }
        int draft_id = item.at("atom_id").get<int>();
        if (draft_id < 0 || draft_id >= static_cast<int>(drafts.size())) {
            throw Error(ErrorCode::operation_for_unknown_draft,
                        "operation names draft " + std::to_string(draft_id) + " of " +
                            std::to_string(drafts.size()));
        }
        if (by_draft.count(draft_id)) {
            throw Error(ErrorCode::invalid_operation,
                        "draft " + std::to_string(draft_id) + " has more than one operation");
        }
        WriteOperation op;
        op.draft_id = draft_id;
        std::string action = trim(get_string(item, "action"));
        if (action == "ADD") {
            op.action = WriteAction::add;
        } else if (action == "UPDATE") {
            op.action = WriteAction::update;
            op.old_memory_id = trim(get_string(item, "old_memory_id"));
            if (op.old_memory_id.empty()) {
                throw Error(ErrorCode::invalid_operation,
                            "UPDATE for draft " + std::to_string(draft_id) +
                                " lacks old_memory_id");
            }
        } else if (action == "SKIP") {
            op.action = WriteAction::skip;
            op.existing_id = trim(get_string(item, "existing_id"));
            if (op.existing_id.empty()) {
                throw Error(ErrorCode::invalid_operation,
                            "SKIP for draft " + std::to_string(draft_id) + " lacks existing_id");
            }
        } else {
            throw Error(ErrorCode::invalid_operation,
                        "unknown action '" + action + "' for draft " + std::to_string(draft_id));
        }
        by_draft.emplace(draft_id, std::move(op));
    }
    for (int i = 0; i < static_cast<int>(drafts.size()); ++i) {
        if (!by_draft.count(i)) {
            throw Error(ErrorCode::invalid_operation,
                        "draft " + std::to_string(i) + " has no operation");
        }
        assignment.operations.push_back(by_draft.at(i));
    }

    // Phase-5 links: one endpoint may be a draft (ADD/UPDATE only; SKIPs
    // must be addressed through their existing_id), the other a stored id.
    auto parse_endpoint = [&](const json& item, const char* atom_key, const char* existing_key,
                              LinkEndpoint& out, std::string& why) {
        bool has_atom = item.contains(atom_key);
        bool has_existing = item.contains(existing_key);
        if (has_atom == has_existing) {
            why = std::string("needs exactly one of ") + atom_key + "/" + existing_key;
            return false;
        }
        if (has_atom) {
            if (!item.at(atom_key).is_number_integer()) {
                why = std::string(atom_key) + " must be an integer";
                return false;
            }
            int draft_id = item.at(atom_key).get<int>();
            if (draft_id < 0 || draft_id >= static_cast<int>(drafts.size())) {
                why = "unknown draft " + std::to_string(draft_id);
                return false;
            }
            if (by_draft.at(draft_id).action == WriteAction::skip) {
                why = "draft " + std::to_string(draft_id) +
                      " was SKIPped; reference it via its existing_id";
                return false;
            }
            out = {true, draft_id, ""};
            return true;
        }
        std::string id = item.at(existing_key).is_string()
                             ? trim(item.at(existing_key).get<std::string>())
                             : "";
        if (id.empty()) {
            why = std::string(existing_key) + " must be a non-empty string";
            return false;
        }
        out = {false, -1, id};
        return true;
    };

    const json& cross = response.value.at("existing_links");
    if (cross.is_array()) {
        for (const auto& item : cross) {
            if (!item.is_object()) {
                assignment.rejected.push_back({brief(item), "existing_link is not an object"});
                continue;
            }
            auto relation = relation_label_from_string(trim(get_string(item, "relation")));
            if (!relation) {
                assignment.rejected.push_back({brief(item), "unknown relation label"});
                continue;
            }
            CrossLink link;
            std::string why;
            if (!parse_endpoint(item, "source_atom", "source_existing_id", link.source, why) ||
                !parse_endpoint(item, "target_atom", "target_existing_id", link.target, why)) {
                assignment.rejected.push_back({brief(item), why});
                continue;
            }
            if (link.source.is_draft && link.target.is_draft) {
                assignment.rejected.push_back(
                    {brief(item), "links between two new atoms belong to the extraction phase"});
                continue;
            }
            link.relation = *relation;
            link.reasoning = get_string(item, "reasoning");
            assignment.cross_links.push_back(std::move(link));
        }
    }
    return assignment;
}

WriteReport commit(const std::vector<WriteOperation>& operations,
                   const std::vector<DraftLink>& links, const std::vector<CrossLink>& cross_links,
                   const std::vector<DraftAtom>& drafts, TypedStoreSet& stores,
                   KnowledgeGraph& graph, ProviderGateway& gateway,
                   const Conversation& conversation) {
    WriteReport report;

    // Stage every mutation on copies; swap in only after the whole commit
    // succeeded.
    TypedStoreSet staged_stores = stores;
    KnowledgeGraph staged_graph = graph;

    std::vector<std::string> texts;
    std::vector<int> text_drafts;
    for (const auto& op : operations) {
        const DraftAtom& draft = drafts.at(static_cast<std::size_t>(op.draft_id));
        switch (op.action) {
            case WriteAction::add:
            case WriteAction::update:
                texts.push_back(embedding_text(draft.title, draft.details));
                text_drafts.push_back(op.draft_id);
                break;
            case WriteAction::skip:
                if (!staged_stores.contains(op.existing_id)) {
                    throw Error(ErrorCode::unknown_existing_id,
                                "SKIP for draft " + std::to_string(op.draft_id) +
                                    " names unknown memory '" + op.existing_id + "'");
                }
                break;
        }
    }
    std::map<int, std::vector<double>> draft_embeddings;
    if (!texts.empty()) {
        auto vectors = gateway.embed_batch(texts);
        for (std::size_t i = 0; i < vectors.size(); ++i) {
            draft_embeddings[text_drafts[i]] = std::move(vectors[i]);
        }
    }

    std::map<int, std::string> remap;  // draft id -> final atom id
    for (const auto& op : operations) {
        const DraftAtom& draft = drafts.at(static_cast<std::size_t>(op.draft_id));
        switch (op.action) {
            case WriteAction::add: {
                MemoryAtom atom;
                atom.id = staged_stores.mint_id(draft.title, draft.details);
                atom.mem_type = draft.mem_type;
                atom.title = draft.title;
                atom.details = draft.details;
                atom.event_time = draft.event_time;
                atom.uncertain = draft.uncertain;
                atom.source_conversation = conversation.id;
                atom.created_at = conversation.timestamp;
                atom.embedding = draft_embeddings.at(op.draft_id);
                remap[op.draft_id] = add_atom(staged_stores, staged_graph, std::move(atom));
                ++report.added;
                break;
            }
            case WriteAction::update: {
                if (!staged_stores.contains(op.old_memory_id)) {
                    throw Error(ErrorCode::unknown_old_memory_id,
                                "UPDATE for draft " + std::to_string(op.draft_id) +
                                    " names unknown memory '" + op.old_memory_id + "'");
                }
                update_atom(staged_stores, op.old_memory_id, draft.title, draft.details,
                            draft_embeddings.at(op.draft_id), conversation.timestamp);
                remap[op.draft_id] = op.old_memory_id;
                ++report.updated;
                break;
            }
            case WriteAction::skip: {
                remap[op.draft_id] = op.existing_id;
                ++report.skipped;
                break;
            }
        }
    }

    std::size_t edges_before = staged_graph.edge_count();
    auto materialize = [&](const std::string& source, const std::string& target,
                           RelationType::Label label, const std::string& reasoning) {
        if (source == target) {
            // possible when two drafts were SKIPped onto the same memory
            report.rejections.push_back(
                {source + " -> " + target, "link collapsed to a self-loop after remap"});
            return;
        }
        add_edge(staged_graph, source, target, {label, false}, reasoning);
    };

    for (const auto& link : links) {
        materialize(remap.at(link.source), remap.at(link.target), link.relation, link.reasoning);
    }
    for (const auto& link : cross_links) {
        auto resolve = [&](const LinkEndpoint& endpoint) {
            if (endpoint.is_draft) return remap.at(endpoint.draft_id);
            if (!staged_stores.contains(endpoint.existing_id)) {
                throw Error(ErrorCode::unknown_existing_id,
                            "link names unknown memory '" + endpoint.existing_id + "'");
            }
            return endpoint.existing_id;
        };
        materialize(resolve(link.source), resolve(link.target), link.relation, link.reasoning);
    }
    report.edges_added = static_cast<int>(staged_graph.edge_count() - edges_before);

    staged_stores.record_conversation(conversation.id);
    stores = std::move(staged_stores);
    graph = std::move(staged_graph);
    return report;
}

WriteReport ingest_conversation(const Conversation& conversation, TypedStoreSet& stores,
                                KnowledgeGraph& graph, ProviderGateway& gateway,
                                const WriteConfig& config) {
    require_conversation(conversation);

    ExtractionResult extraction = decompose(conversation, gateway);
    ExtractionResult fragment = self_verify(conversation, extraction, gateway);

    std::vector<DraftAtom> drafts = extraction.atoms;
    drafts.insert(drafts.end(), fragment.atoms.begin(), fragment.atoms.end());
    std::vector<DraftLink> links = extraction.links;
    links.insert(links.end(), fragment.links.begin(), fragment.links.end());

    OperationAssignment assignment =
        assign_operations(drafts, stores, gateway, config.candidate_n, conversation);

    WriteReport report = commit(assignment.operations, links, assignment.cross_links, drafts,
                                stores, graph, gateway, conversation);
    report.verification_additions = static_cast<int>(fragment.atoms.size());

    auto collect = [&report](const std::vector<RejectedItem>& items) {
        report.rejections.insert(report.rejections.begin(), items.begin(), items.end());
    };
    collect(assignment.rejected);
    collect(fragment.rejected);
    collect(extraction.rejected);
    report.audit = {extraction.exchange, fragment.exchange, assignment.exchange};
    return report;
}

}  // namespace memguard
