#include "memguard/persist/snapshot.hpp"

#include <map>
#include <set>

#include "memguard/core/similarity.hpp"
#include "memguard/errors.hpp"
#include "memguard/util/fs.hpp"

namespace memguard {

namespace {

using nlohmann::json;

json atom_to_json(const MemoryAtom& atom) {
    json event_time = {{"raw", atom.event_time.raw},
                       {"granularity", to_string(atom.event_time.granularity)}};
    if (atom.event_time.canonical) event_time["canonical"] = *atom.event_time.canonical;

    json revisions = json::array();
    for (const auto& r : atom.revisions) {
        revisions.push_back({{"details", r.details},
                             {"embedding_digest", r.embedding_digest},
                             {"timestamp", r.timestamp}});
    }
    return json{{"id", atom.id},
                {"type", to_string(atom.mem_type)},
                {"title", atom.title},
                {"details", atom.details},
                {"event_time", event_time},
                {"uncertain", atom.uncertain},
                {"source_conversation", atom.source_conversation},
                {"created_at", atom.created_at},
                {"revisions", revisions},
                {"embedding", atom.embedding}};
}

MemoryAtom atom_from_json(const json& item) {
    MemoryAtom atom;
    atom.id = item.at("id").get<std::string>();
    auto type = memory_type_from_string(item.at("type").get<std::string>());
    if (!type) throw Error(ErrorCode::parse_error, "unknown memory type for '" + atom.id + "'");
    atom.mem_type = *type;
    atom.title = item.at("title").get<std::string>();
    atom.details = item.at("details").get<std::string>();

    const json& et = item.at("event_time");
    atom.event_time.raw = et.at("raw").get<std::string>();
    auto granularity = granularity_from_string(et.at("granularity").get<std::string>());
    if (!granularity) {
        throw Error(ErrorCode::parse_error, "unknown time granularity for '" + atom.id + "'");
    }
    atom.event_time.granularity = *granularity;
    if (et.contains("canonical")) atom.event_time.canonical = et.at("canonical").get<std::string>();

    atom.uncertain = item.at("uncertain").get<bool>();
    atom.source_conversation = item.at("source_conversation").get<std::string>();
    atom.created_at = item.at("created_at").get<std::string>();
    for (const auto& r : item.at("revisions")) {
        atom.revisions.push_back({r.at("details").get<std::string>(),
                                  r.at("embedding_digest").get<std::string>(),
                                  r.at("timestamp").get<std::string>()});
    }
    atom.embedding = item.at("embedding").get<std::vector<double>>();
    return atom;
}

}  // namespace

std::vector<IntegrityViolation> verify_integrity(const TypedStoreSet& stores,
                                                 const KnowledgeGraph& graph) {
    std::vector<IntegrityViolation> violations;

    std::set<std::string> store_ids;
    for (MemoryType type : kMemoryTypes) {
        for (const auto& atom : stores.store(type)) {
            if (atom.mem_type != type) {
                violations.push_back({"type-isolation",
                                      "atom '" + atom.id + "' of type " +
                                          to_string(atom.mem_type) + " sits in the " +
                                          to_string(type) + " store"});
            }
            if (!store_ids.insert(atom.id).second) {
                violations.push_back(
                    {"id-uniqueness", "atom id '" + atom.id + "' appears more than once"});
            }
            if (atom.embedding.size() != stores.embedding_dimension()) {
                violations.push_back({"embedding-dimension",
                                      "atom '" + atom.id + "' has dimension " +
                                          std::to_string(atom.embedding.size()) + ", store set uses " +
                                          std::to_string(stores.embedding_dimension())});
            } else if (!is_unit_vector(atom.embedding)) {
                violations.push_back(
                    {"unit-norm", "atom '" + atom.id + "' embedding is not unit-length"});
            }
        }
    }

    for (const auto& id : store_ids) {
        if (!graph.has_node(id)) {
            violations.push_back(
                {"graph-store-consistency", "atom '" + id + "' is missing from the graph"});
        }
    }
    for (const auto& node : graph.nodes()) {
        if (!store_ids.count(node)) {
            violations.push_back(
                {"graph-store-consistency", "graph node '" + node + "' has no stored atom"});
        }
    }

    // Inverse closure: the forward<->derived pairing must be a bijection.
    std::multiset<std::string> forward_keys;
    std::multiset<std::string> derived_keys;
    for (const auto& [node, edges] : graph.adjacency()) {
        for (const auto& e : edges) {
            std::string key = e.derived_inverse
                                  ? e.target + "\x1f" + e.source + "\x1f" + e.relation.inverse().name()
                                  : e.source + "\x1f" + e.target + "\x1f" + e.relation.name();
            (e.derived_inverse ? derived_keys : forward_keys).insert(key);
        }
    }
    for (const auto& key : forward_keys) {
        if (derived_keys.count(key) != forward_keys.count(key)) {
            violations.push_back(
                {"inverse-closure", "edge multiplicity mismatch for <" + key + ">"});
            break;
        }
    }
    for (const auto& key : derived_keys) {
        if (forward_keys.count(key) != derived_keys.count(key)) {
            violations.push_back(
                {"inverse-closure", "derived edge without a stored forward edge <" + key + ">"});
            break;
        }
    }

    return violations;
}

nlohmann::json snapshot_to_json(const TypedStoreSet& stores, const KnowledgeGraph& graph) {
    json atoms;
    for (MemoryType type : kMemoryTypes) {
        json section = json::array();
        for (const auto& atom : stores.store(type)) section.push_back(atom_to_json(atom));
        atoms[to_string(type)] = std::move(section);
    }
    json edges = json::array();
    for (const auto& e : graph.forward_edges()) {
        edges.push_back({{"source", e.source},
                         {"target", e.target},
                         {"relation", e.relation.name()},
                         {"reasoning", e.reasoning}});
    }
    return json{{"format_version", kSnapshotFormatVersion},
                {"embedding_dimension", stores.embedding_dimension()},
                {"metadata",
                 {{"created_at", stores.created_at()},
                  {"conversations_ingested", stores.conversations_ingested()},
                  {"next_sequence", stores.next_sequence()}}},
                {"atoms", atoms},
                {"edges", edges}};
}

std::size_t save_snapshot(const TypedStoreSet& stores, const KnowledgeGraph& graph,
                          const std::filesystem::path& path) {
    return write_file_atomic(path, snapshot_to_json(stores, graph).dump(2) + "\n",
                             ErrorCode::path_not_writable);
}

std::pair<TypedStoreSet, KnowledgeGraph> snapshot_from_json(const nlohmann::json& doc) {
    if (!doc.is_object() || !doc.contains("format_version") ||
        !doc.at("format_version").is_number_integer()) {
        throw Error(ErrorCode::parse_error, "snapshot lacks an integer format_version");
    }
    int version = doc.at("format_version").get<int>();
    if (version > kSnapshotFormatVersion) {
        throw Error(ErrorCode::version_mismatch,
                    "snapshot format_version " + std::to_string(version) + " is newer than " +
                        std::to_string(kSnapshotFormatVersion));
    }

    std::vector<IntegrityViolation> violations;
    std::vector<std::pair<MemoryType, MemoryAtom>> atoms;  // section, atom
    std::set<std::string> ids;
    std::size_t dimension = 0;

    try {
        dimension = doc.at("embedding_dimension").get<std::size_t>();
        for (MemoryType type : kMemoryTypes) {
            for (const auto& item : doc.at("atoms").at(to_string(type))) {
                MemoryAtom atom = atom_from_json(item);
                if (atom.mem_type != type) {
                    violations.push_back({"type-isolation",
                                          "atom '" + atom.id + "' of type " +
                                              to_string(atom.mem_type) + " is listed under the " +
                                              to_string(type) + " section"});
                }
                if (!ids.insert(atom.id).second) {
                    violations.push_back(
                        {"id-uniqueness", "atom id '" + atom.id + "' appears more than once"});
                }
                if (atom.title.empty() || atom.details.empty()) {
                    violations.push_back(
                        {"atom-content", "atom '" + atom.id + "' has empty title or details"});
                }
                if (atom.embedding.size() != dimension) {
                    violations.push_back({"embedding-dimension",
                                          "atom '" + atom.id + "' has dimension " +
                                              std::to_string(atom.embedding.size())});
                } else if (!is_unit_vector(atom.embedding)) {
                    violations.push_back(
                        {"unit-norm", "atom '" + atom.id + "' embedding is not unit-length"});
                }
                atoms.emplace_back(type, std::move(atom));
            }
        }
    } catch (const json::exception& e) {
        throw Error(ErrorCode::parse_error, std::string("snapshot atoms: ") + e.what());
    }

    struct EdgeRecord {
        std::string source, target, reasoning;
        RelationType relation;
    };
    std::vector<EdgeRecord> edges;
    std::set<std::string> edge_keys;
    try {
        for (const auto& item : doc.at("edges")) {
            EdgeRecord edge;
            edge.source = item.at("source").get<std::string>();
            edge.target = item.at("target").get<std::string>();
            edge.reasoning = item.value("reasoning", "");
            std::string relation = item.at("relation").get<std::string>();
            auto label = relation_label_from_string(relation);
            if (!label) {
                violations.push_back({"edge-validity", "unknown relation '" + relation + "'"});
                continue;
            }
            edge.relation = {*label, false};
            if (!ids.count(edge.source) || !ids.count(edge.target)) {
                violations.push_back({"graph-store-consistency",
                                      "edge " + edge.source + " -> " + edge.target +
                                          " references a missing atom"});
            }
            if (edge.source == edge.target) {
                violations.push_back(
                    {"edge-validity", "self-loop on '" + edge.source + "'"});
            }
            if (!edge_keys.insert(edge.source + "\x1f" + edge.target + "\x1f" + relation).second) {
                violations.push_back({"edge-validity",
                                      "duplicate edge " + edge.source + " -> " + edge.target +
                                          " (" + relation + ")"});
            }
            edges.push_back(std::move(edge));
        }
    } catch (const json::exception& e) {
        throw Error(ErrorCode::parse_error, std::string("snapshot edges: ") + e.what());
    }

    if (!violations.empty()) {
        std::string detail = violations.front().invariant + ": " + violations.front().detail;
        if (violations.size() > 1) {
            detail += " (+" + std::to_string(violations.size() - 1) + " more)";
        }
        throw Error(ErrorCode::integrity_violation, detail);
    }

    TypedStoreSet stores(dimension);
    KnowledgeGraph graph;
    for (auto& [section, atom] : atoms) {
        add_atom(stores, graph, std::move(atom));
    }
    for (const auto& edge : edges) {
        add_edge(graph, edge.source, edge.target, edge.relation, edge.reasoning);
    }

    try {
        const json& metadata = doc.at("metadata");
        stores.set_created_at(metadata.at("created_at").get<std::string>());
        stores.set_next_sequence(metadata.at("next_sequence").get<std::uint64_t>());
        for (const auto& c : metadata.at("conversations_ingested")) {
            stores.record_conversation(c.get<std::string>());
        }
    } catch (const json::exception& e) {
        throw Error(ErrorCode::parse_error, std::string("snapshot metadata: ") + e.what());
    }
    return {std::move(stores), std::move(graph)};
}

std::pair<TypedStoreSet, KnowledgeGraph> load_snapshot(const std::filesystem::path& path) {
    auto parsed = nlohmann::json::parse(read_file(path, ErrorCode::io_failure), nullptr, false);
    if (parsed.is_discarded()) {
        throw Error(ErrorCode::parse_error, "'" + path.string() + "' is not valid JSON");
    }
    return snapshot_from_json(parsed);
}

}  // namespace memguard
