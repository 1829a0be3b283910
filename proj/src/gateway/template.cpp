#include "memguard/gateway/template.hpp"

#include "memguard/errors.hpp"
#include "memguard/gateway/template_text.hpp"

namespace memguard {

const char* to_string(TemplateId id) {
    switch (id) {
        case TemplateId::extraction: return "extraction";
        case TemplateId::self_check: return "self_check";
        case TemplateId::operation_assignment: return "operation_assignment";
        case TemplateId::routing: return "routing";
        case TemplateId::answer_generation: return "answer_generation";
        case TemplateId::judge_integrity: return "judge_integrity";
        case TemplateId::judge_accuracy: return "judge_accuracy";
        case TemplateId::judge_update: return "judge_update";
        case TemplateId::judge_qa: return "judge_qa";
        case TemplateId::judge_retrieval_coverage: return "judge_retrieval_coverage";
        case TemplateId::judge_answer_label: return "judge_answer_label";
    }
    return "extraction";
}

const std::vector<PromptTemplate>& all_prompt_templates() {
    static const std::vector<PromptTemplate> templates = {
        {TemplateId::extraction,
         TemplateStyle::moustache,
         kTemplateText_extraction,
         {"conversation_timestamp", "messages"}},
        {TemplateId::self_check,
         TemplateStyle::moustache,
         kTemplateText_self_check,
         {"conversation_timestamp", "messages", "existing_atoms_json", "next_id"}},
        {TemplateId::operation_assignment,
         TemplateStyle::moustache,
         kTemplateText_operation_assignment,
         {"conversation_timestamp", "existing_semantic_memories", "existing_episodic_memories",
          "existing_procedural_memories", "atoms_json"}},
        {TemplateId::routing, TemplateStyle::moustache, kTemplateText_routing, {"user_query"}},
        {TemplateId::answer_generation,
         TemplateStyle::format,
         kTemplateText_answer_generation,
         {"retrieved context", "question"}},
        {TemplateId::judge_integrity,
         TemplateStyle::format,
         kTemplateText_judge_integrity,
         {"memories", "expected_memory_point"}},
        {TemplateId::judge_accuracy,
         TemplateStyle::format,
         kTemplateText_judge_accuracy,
         {"dialogue", "golden_memories", "candidate_memory"}},
        {TemplateId::judge_update,
         TemplateStyle::format,
         kTemplateText_judge_update,
         {"memories", "updated_memory", "original_memory"}},
        {TemplateId::judge_qa,
         TemplateStyle::format,
         kTemplateText_judge_qa,
         {"question", "reference_answer", "key_memory_points", "response"}},
        {TemplateId::judge_retrieval_coverage,
         TemplateStyle::format,
         kTemplateText_judge_retrieval_coverage,
         {"retrieved_context", "gold_evidence_point"}},
        {TemplateId::judge_answer_label,
         TemplateStyle::format,
         kTemplateText_judge_answer_label,
         {"question", "gold_answer", "generated_answer"}},
    };
    return templates;
}

const PromptTemplate& prompt_template(TemplateId id) {
    for (const auto& t : all_prompt_templates()) {
        if (t.id == id) return t;
    }
    throw Error(ErrorCode::unknown_template, "no template registered");
}

namespace {

std::string lookup_slot(const PromptTemplate& tmpl, const std::map<std::string, std::string>& slots,
                        const std::string& name) {
    auto it = slots.find(name);
    if (it == slots.end()) {
        throw Error(ErrorCode::missing_slot,
                    std::string(to_string(tmpl.id)) + " requires slot '" + name + "'");
    }
    return it->second;
}

std::string render_moustache(const PromptTemplate& tmpl,
                             const std::map<std::string, std::string>& slots) {
    const std::string& body = tmpl.body;
    std::string out;
    out.reserve(body.size());
    std::size_t i = 0;
    while (i < body.size()) {
        if (body.compare(i, 2, "{{") == 0) {
            std::size_t close = body.find("}}", i + 2);
            if (close == std::string::npos) {
                throw Error(ErrorCode::missing_slot,
                            std::string(to_string(tmpl.id)) + " has an unterminated slot");
            }
            out += lookup_slot(tmpl, slots, body.substr(i + 2, close - i - 2));
            i = close + 2;
        } else {
            out += body[i++];
        }
    }
    return out;
}

std::string render_format(const PromptTemplate& tmpl,
                          const std::map<std::string, std::string>& slots) {
    const std::string& body = tmpl.body;
    std::string out;
    out.reserve(body.size());
    std::size_t i = 0;
    while (i < body.size()) {
        char c = body[i];
        if (c == '{') {
            if (i + 1 < body.size() && body[i + 1] == '{') {
                out += '{';
                i += 2;
                continue;
            }
            std::size_t close = body.find('}', i + 1);
            if (close == std::string::npos) {
                throw Error(ErrorCode::missing_slot,
                            std::string(to_string(tmpl.id)) + " has an unterminated slot");
            }
            out += lookup_slot(tmpl, slots, body.substr(i + 1, close - i - 1));
            i = close + 1;
        } else if (c == '}' && i + 1 < body.size() && body[i + 1] == '}') {
            out += '}';
            i += 2;
        } else {
            out += c;
            i += 1;
        }
    }
    return out;
}

}  // namespace

std::string render_template(TemplateId id, const std::map<std::string, std::string>& slots) {
    const PromptTemplate& tmpl = prompt_template(id);
    return tmpl.style == TemplateStyle::moustache ? render_moustache(tmpl, slots)
                                                  : render_format(tmpl, slots);
}

}  // namespace memguard
