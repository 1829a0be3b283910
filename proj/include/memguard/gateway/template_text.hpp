#pragma once

// Raw template bodies. Acceptance checks these against the golden files
// under tests/golden/prompts/ byte for byte.

namespace memguard {

extern const char* const kTemplateText_extraction;
extern const char* const kTemplateText_operation_assignment;
extern const char* const kTemplateText_self_check;
extern const char* const kTemplateText_routing;
extern const char* const kTemplateText_answer_generation;
extern const char* const kTemplateText_judge_integrity;
extern const char* const kTemplateText_judge_accuracy;
extern const char* const kTemplateText_judge_update;
extern const char* const kTemplateText_judge_qa;
extern const char* const kTemplateText_judge_retrieval_coverage;
extern const char* const kTemplateText_judge_answer_label;

}  // namespace memguard
