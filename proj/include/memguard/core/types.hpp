#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace memguard {

/// The three functional memory types. Every atom carries exactly one.
enum class MemoryType { semantic, episodic, procedural };

inline constexpr std::array<MemoryType, 3> kMemoryTypes = {
    MemoryType::semantic, MemoryType::episodic, MemoryType::procedural};

const char* to_string(MemoryType type);
std::optional<MemoryType> memory_type_from_string(const std::string& text);
inline std::size_t type_index(MemoryType type) { return static_cast<std::size_t>(type); }

/// When an event actually occurred, as extracted from conversation text.
/// Either a canonical date at day/month/year granularity, or a relative
/// expression kept verbatim ("last weekend before 2023-07-05").
struct EventTime {
    enum class Granularity { day, month, year, relative_text };

    std::string raw;
    Granularity granularity = Granularity::relative_text;
    std::optional<std::string> canonical;

    /// Classifies a raw time string: YYYY-MM-DD / YYYY-MM / YYYY get a
    /// canonical form; anything else non-empty is kept as relative text.
    /// Throws malformed-atom on empty input.
    static EventTime from_raw(const std::string& raw);
};

const char* to_string(EventTime::Granularity granularity);
std::optional<EventTime::Granularity> granularity_from_string(const std::string& text);

/// Directed typed relation. `inverted` marks the reverse reading of the
/// base label: (a, b, supports) is traversed from b as inverse_supports.
struct RelationType {
    enum class Label {
        supports,
        instance_of,
        derived_from,
        leads_to,
        context_for,
        elaborates,
        contradicts,
    };

    Label label;
    bool inverted = false;

    RelationType inverse() const { return {label, !inverted}; }
    std::string name() const;

    friend bool operator==(const RelationType&, const RelationType&) = default;
};

const char* relation_label_name(RelationType::Label label);
std::optional<RelationType::Label> relation_label_from_string(const std::string& text);
inline constexpr std::size_t kRelationLabelCount = 7;

/// Content superseded by an UPDATE: the old details, a digest of the old
/// embedding, and when the replacement happened. Oldest first.
struct Revision {
    std::string details;
    std::string embedding_digest;
    std::string timestamp;

    friend bool operator==(const Revision&, const Revision&) = default;
};

/// One self-contained memory unit. `details` includes the resolved event
/// time and mention timestamp so the text stands alone; `embedding` is
/// unit-length.
struct MemoryAtom {
    std::string id;
    MemoryType mem_type = MemoryType::semantic;
    std::string title;
    std::string details;
    EventTime event_time;
    bool uncertain = false;
    std::string source_conversation;
    std::string created_at;  // ISO-8601 text, compared lexicographically
    std::vector<Revision> revisions;
    std::vector<double> embedding;
};

struct RelationEdge {
    std::string source;
    std::string target;
    RelationType relation;
    std::string reasoning;
    bool derived_inverse = false;
};

std::string embedding_digest(const std::vector<double>& embedding);

}  // namespace memguard
