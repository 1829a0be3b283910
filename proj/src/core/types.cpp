#include "memguard/core/types.hpp"

#include <cctype>

#include "memguard/errors.hpp"
#include "memguard/util/digest.hpp"

namespace memguard {

const char* to_string(MemoryType type) {
    switch (type) {
        case MemoryType::semantic: return "semantic";
        case MemoryType::episodic: return "episodic";
        case MemoryType::procedural: return "procedural";
    }
    return "semantic";
}

std::optional<MemoryType> memory_type_from_string(const std::string& text) {
    if (text == "semantic") return MemoryType::semantic;
    if (text == "episodic") return MemoryType::episodic;
    if (text == "procedural") return MemoryType::procedural;
    return std::nullopt;
}

namespace {

bool all_digits(const std::string& s, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
}

bool matches_day(const std::string& s) {
    return s.size() == 10 && all_digits(s, 0, 4) && s[4] == '-' && all_digits(s, 5, 7) &&
           s[7] == '-' && all_digits(s, 8, 10);
}

bool matches_month(const std::string& s) {
    return s.size() == 7 && all_digits(s, 0, 4) && s[4] == '-' && all_digits(s, 5, 7);
}

bool matches_year(const std::string& s) { return s.size() == 4 && all_digits(s, 0, 4); }

}  // namespace

EventTime EventTime::from_raw(const std::string& raw) {
    if (raw.empty()) {
        throw Error(ErrorCode::malformed_atom, "event time must be non-empty");
    }
    EventTime t;
    t.raw = raw;
    if (matches_day(raw)) {
        t.granularity = Granularity::day;
        t.canonical = raw;
    } else if (matches_month(raw)) {
        t.granularity = Granularity::month;
        t.canonical = raw;
    } else if (matches_year(raw)) {
        t.granularity = Granularity::year;
        t.canonical = raw;
    } else {
        t.granularity = Granularity::relative_text;
    }
    return t;
}

const char* to_string(EventTime::Granularity granularity) {
    switch (granularity) {
        case EventTime::Granularity::day: return "day";
        case EventTime::Granularity::month: return "month";
        case EventTime::Granularity::year: return "year";
        case EventTime::Granularity::relative_text: return "relative-text";
    }
    return "relative-text";
}

std::optional<EventTime::Granularity> granularity_from_string(const std::string& text) {
    if (text == "day") return EventTime::Granularity::day;
    if (text == "month") return EventTime::Granularity::month;
    if (text == "year") return EventTime::Granularity::year;
    if (text == "relative-text") return EventTime::Granularity::relative_text;
    return std::nullopt;
}

const char* relation_label_name(RelationType::Label label) {
    switch (label) {
        case RelationType::Label::supports: return "supports";
        case RelationType::Label::instance_of: return "instance_of";
        case RelationType::Label::derived_from: return "derived_from";
        case RelationType::Label::leads_to: return "leads_to";
        case RelationType::Label::context_for: return "context_for";
        case RelationType::Label::elaborates: return "elaborates";
        case RelationType::Label::contradicts: return "contradicts";
    }
    return "supports";
}

std::optional<RelationType::Label> relation_label_from_string(const std::string& text) {
    if (text == "supports") return RelationType::Label::supports;
    if (text == "instance_of") return RelationType::Label::instance_of;
    if (text == "derived_from") return RelationType::Label::derived_from;
    if (text == "leads_to") return RelationType::Label::leads_to;
    if (text == "context_for") return RelationType::Label::context_for;
    if (text == "elaborates") return RelationType::Label::elaborates;
    if (text == "contradicts") return RelationType::Label::contradicts;
    return std::nullopt;
}

std::string RelationType::name() const {
    std::string base = relation_label_name(label);
    return inverted ? "inverse_" + base : base;
}

std::string embedding_digest(const std::vector<double>& embedding) {
    std::string_view bytes(reinterpret_cast<const char*>(embedding.data()),
                           embedding.size() * sizeof(double));
    return digest_hex(bytes);
}

}  // namespace memguard
