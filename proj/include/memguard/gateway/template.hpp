#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

namespace memguard {

enum class TemplateId {
    extraction,
    self_check,
    operation_assignment,
    routing,
    answer_generation,
    judge_integrity,
    judge_accuracy,
    judge_update,
    judge_qa,
    judge_retrieval_coverage,
    judge_answer_label,
};

const char* to_string(TemplateId id);

/// Placeholder convention of a template body. The pipeline templates mark
/// slots as {{name}} and treat single braces as literal text; the judge and
/// answer templates use {name} slots with doubled braces escaping a literal
/// brace, and rendering unescapes those.
enum class TemplateStyle { moustache, format };

struct PromptTemplate {
    TemplateId id;
    TemplateStyle style;
    std::string body;
    std::set<std::string> required_slots;
};

const PromptTemplate& prompt_template(TemplateId id);
const std::vector<PromptTemplate>& all_prompt_templates();

/// Substitutes every slot occurrence. Fails if a slot in the body has no
/// supplied value (missing-slot); supplied values never get rescanned.
/// Errors: unknown-template, missing-slot.
std::string render_template(TemplateId id, const std::map<std::string, std::string>& slots);

}  // namespace memguard
