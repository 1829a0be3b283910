#include "memguard/write/conversation.hpp"

#include <nlohmann/json.hpp>
#include <sstream>

#include "memguard/errors.hpp"

namespace memguard {

namespace {

using nlohmann::json;

json parse_line(const std::string& line, std::size_t line_number) {
    auto parsed = json::parse(line, nullptr, false);
    if (parsed.is_discarded() || !parsed.is_object()) {
        throw Error(ErrorCode::conversation_parse,
                    "line " + std::to_string(line_number) + " is not a JSON object");
    }
    return parsed;
}

std::string require_string(const json& obj, const char* key, std::size_t line_number) {
    if (!obj.contains(key) || !obj.at(key).is_string() ||
        obj.at(key).get<std::string>().empty()) {
        throw Error(ErrorCode::conversation_parse, "line " + std::to_string(line_number) +
                                                       " needs a non-empty string '" + key + "'");
    }
    return obj.at(key).get<std::string>();
}

}  // namespace

std::vector<Conversation> parse_conversations_jsonl(std::istream& input) {
    std::vector<Conversation> conversations;
    std::string line;
    std::size_t line_number = 0;

    while (std::getline(input, line)) {
        ++line_number;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json obj = parse_line(line, line_number);

        if (obj.contains("conversation_id")) {
            Conversation c;
            c.id = require_string(obj, "conversation_id", line_number);
            c.timestamp = require_string(obj, "timestamp", line_number);
            conversations.push_back(std::move(c));
        } else {
            if (conversations.empty()) {
                throw Error(ErrorCode::conversation_parse,
                            "line " + std::to_string(line_number) +
                                " appears before any conversation header");
            }
            Message m;
            m.speaker = require_string(obj, "speaker", line_number);
            m.text = require_string(obj, "text", line_number);
            m.timestamp = require_string(obj, "timestamp", line_number);
            conversations.back().messages.push_back(std::move(m));
        }
    }
    if (conversations.empty()) {
        throw Error(ErrorCode::conversation_parse, "input holds no conversation header");
    }
    return conversations;
}

Conversation parse_conversation_jsonl(std::istream& input) {
    auto all = parse_conversations_jsonl(input);
    if (all.size() != 1) {
        throw Error(ErrorCode::conversation_parse,
                    "expected exactly one conversation, found " + std::to_string(all.size()));
    }
    return std::move(all.front());
}

Conversation parse_conversation_jsonl(const std::string& text) {
    std::istringstream stream(text);
    return parse_conversation_jsonl(stream);
}

std::string render_messages(const Conversation& conversation) {
    std::string out;
    for (const auto& m : conversation.messages) {
        out += "[" + m.speaker + "] (" + m.timestamp + "): " + m.text + "\n";
    }
    if (!out.empty()) out.pop_back();
    return out;
}

std::string conversation_to_jsonl(const Conversation& conversation) {
    std::string out =
        nlohmann::json{{"conversation_id", conversation.id}, {"timestamp", conversation.timestamp}}
            .dump() +
        "\n";
    for (const auto& m : conversation.messages) {
        out += nlohmann::json{{"speaker", m.speaker}, {"text", m.text}, {"timestamp", m.timestamp}}
                   .dump() +
               "\n";
    }
    return out;
}

}  // namespace memguard
