#pragma once

#include <istream>
#include <string>
#include <vector>

namespace memguard {

struct Message {
    std::string speaker;
    std::string text;
    std::string timestamp;  // ISO-8601
};

struct Conversation {
    std::string id;
    std::string timestamp;  // ISO-8601, session-level
    std::vector<Message> messages;
};

/// JSONL input: a session header line {"conversation_id", "timestamp"}
/// followed by one message object per line {"speaker", "text", "timestamp"}.
/// Errors name the offending line number.
Conversation parse_conversation_jsonl(std::istream& input);
Conversation parse_conversation_jsonl(const std::string& text);

/// Reads consecutive conversations from one stream (each starts at a
/// header line).
std::vector<Conversation> parse_conversations_jsonl(std::istream& input);

/// "[speaker] (timestamp): text" lines, one per message.
std::string render_messages(const Conversation& conversation);

std::string conversation_to_jsonl(const Conversation& conversation);

}  // namespace memguard
