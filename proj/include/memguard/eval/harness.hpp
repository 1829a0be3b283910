#pragma once

#include <filesystem>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "memguard/eval/backend.hpp"
#include "memguard/gateway/gateway.hpp"

namespace memguard {

struct GoldMemoryPoint {
    std::string conversation_id;
    std::string content;
    double weight = 1.0;
};

/// Coverage grade for one gold point: raw 2/1/0 mapped onto s in {1, 0.5, 0}.
struct IntegrityVerdict {
    int raw_score = 0;
    double s_value = 0.0;
    std::string reasoning;
};

struct AccuracyVerdict {
    int accuracy_score = 0;  // 2 | 1 | 0
    bool included_in_gold = false;
    std::string reason;
};

enum class RateLabel { correct, hallucination, omission, other };

const char* to_string(RateLabel label);

struct RateVerdict {
    RateLabel label = RateLabel::correct;
    std::string reasoning;
};

struct WeightedIntegrityVerdict {
    IntegrityVerdict verdict;
    double weight = 1.0;
};

struct ExtractionMetrics {
    double recall = 0.0;
    double weighted_recall = 0.0;
    double target_precision = 0.0;
    double accuracy = 0.0;
    double f1 = 0.0;
};

struct Rates {
    double correct = 0.0;
    double hallucination = 0.0;
    double omission = 0.0;
    double other = 0.0;
};

enum class AnswerLabel { correct, wrong };

/// Coverage judgement of one gold point against extracted memory texts.
/// Errors: score-out-of-enum, chat errors.
IntegrityVerdict judge_integrity(const std::vector<std::string>& extracted,
                                 const GoldMemoryPoint& gold, ProviderGateway& gateway);

/// Factuality judgement of one candidate memory against the dialogue and
/// the gold points.
AccuracyVerdict judge_accuracy(const std::string& dialogue, const std::string& golden_memories,
                               const std::string& candidate_memory, ProviderGateway& gateway);

/// Four-way update verdict (Other is valid here).
/// Errors: label-out-of-enum, chat errors.
RateVerdict judge_update(const std::vector<std::string>& memories_after,
                         const std::string& target_update, const std::string& original,
                         ProviderGateway& gateway);

/// Three-way QA verdict; "Other" is out of enum for QA.
RateVerdict judge_qa(const std::string& question, const std::string& reference_answer,
                     const std::string& key_points, const std::string& response,
                     ProviderGateway& gateway);

/// Coverage judgement of one gold point against a retrieved context.
IntegrityVerdict judge_retrieval_coverage(const std::vector<std::string>& context,
                                          const std::string& gold_point, ProviderGateway& gateway);

/// CORRECT/WRONG utility label, parsed case-insensitively.
AnswerLabel judge_answer_label(const std::string& question, const std::string& gold_answer,
                               const std::string& generated, ProviderGateway& gateway);

/// R, Weighted R, Target P, Acc, F1. A gold point counts as matched for
/// plain recall iff its raw score is 2; `partial_counts` switches to the
/// >= 1 reading.
/// Errors: empty-input.
ExtractionMetrics compute_extraction_metrics(const std::vector<WeightedIntegrityVerdict>& integrity,
                                             const std::vector<AccuracyVerdict>& accuracy,
                                             bool partial_counts = false);

/// Per-label fractions; they sum to 1.
/// Errors: empty-input.
Rates compute_rates(const std::vector<RateVerdict>& verdicts);

struct EvalConfig {
    bool judge_extraction = true;
    bool judge_updates = true;
    bool judge_qa = true;
    bool judge_retrieval = true;
    bool judge_answers = true;
    bool recall_partial_counts = false;
    int parallelism = 1;
};

struct EvalDataset {
    std::vector<Conversation> conversations;
    std::vector<GoldMemoryPoint> gold_memory_points;
    struct UpdateCase {
        std::string conversation_id;
        std::string target_update;
        std::string original;
    };
    std::vector<UpdateCase> update_cases;
    struct QaItem {
        std::string question;
        std::string reference_answer;
        std::vector<std::string> key_points;
        std::optional<std::string> gold_answer;
    };
    std::vector<QaItem> qa_items;
};

/// Errors: dataset-parse-error.
EvalDataset parse_dataset(const nlohmann::json& doc);
EvalDataset load_dataset(const std::filesystem::path& path);

/// Replays the dataset through the backend, runs the requested judge
/// passes, and writes a JSON report (per-item verdicts plus aggregates).
/// Backend or judge failures are recorded per item and the suite continues.
nlohmann::json run_suite(const EvalDataset& dataset, MemoryBackend& backend,
                         ProviderGateway& gateway, const std::filesystem::path& report_path,
                         const EvalConfig& config = {});
nlohmann::json run_suite(const std::filesystem::path& dataset_path, MemoryBackend& backend,
                         ProviderGateway& gateway, const std::filesystem::path& report_path,
                         const EvalConfig& config = {});

}  // namespace memguard
