#include "memguard/eval/harness.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <thread>

#include "memguard/errors.hpp"
#include "memguard/util/digest.hpp"
#include "memguard/util/fs.hpp"

namespace memguard {

namespace {

using nlohmann::json;

std::string bullet_list(const std::vector<std::string>& items) {
    if (items.empty()) return "(none)";
    std::string out;
    for (const auto& item : items) out += "- " + item + "\n";
    out.pop_back();
    return out;
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

/// Accepts 2 | 1 | 0 as a JSON number or a numeric string.
int parse_score(const json& value) {
    int score = -1;
    if (value.is_number_integer()) {
        score = value.get<int>();
    } else if (value.is_string()) {
        const std::string& text = value.get_ref<const std::string&>();
        if (text == "0" || text == "1" || text == "2") score = text[0] - '0';
    }
    if (score < 0 || score > 2) {
        throw Error(ErrorCode::score_out_of_enum, "score must be 2, 1 or 0, got " + value.dump());
    }
    return score;
}

IntegrityVerdict integrity_from_response(const json& value) {
    IntegrityVerdict verdict;
    verdict.raw_score = parse_score(value.at("score"));
    verdict.s_value = verdict.raw_score == 2 ? 1.0 : (verdict.raw_score == 1 ? 0.5 : 0.0);
    verdict.reasoning = value.at("reasoning").is_string() ? value.at("reasoning").get<std::string>() : "";
    return verdict;
}

RateLabel parse_rate_label(const json& value, bool allow_other) {
    std::string text = value.is_string() ? lower(value.get<std::string>()) : "";
    if (text == "correct") return RateLabel::correct;
    if (text == "hallucination") return RateLabel::hallucination;
    if (text == "omission") return RateLabel::omission;
    if (text == "other" && allow_other) return RateLabel::other;
    throw Error(ErrorCode::label_out_of_enum, "verdict label '" + value.dump() + "' is not allowed");
}

}  // namespace

const char* to_string(RateLabel label) {
    switch (label) {
        case RateLabel::correct: return "Correct";
        case RateLabel::hallucination: return "Hallucination";
        case RateLabel::omission: return "Omission";
        case RateLabel::other: return "Other";
    }
    return "Correct";
}

IntegrityVerdict judge_integrity(const std::vector<std::string>& extracted,
                                 const GoldMemoryPoint& gold, ProviderGateway& gateway) {
    if (gold.content.empty()) {
        throw Error(ErrorCode::empty_input, "gold memory point content is empty");
    }
    auto response = gateway.invoke_chat_json(TemplateId::judge_integrity,
                                             {{"memories", bullet_list(extracted)},
                                              {"expected_memory_point", gold.content}},
                                             {"reasoning", "score"});
    return integrity_from_response(response.value);
}

AccuracyVerdict judge_accuracy(const std::string& dialogue, const std::string& golden_memories,
                               const std::string& candidate_memory, ProviderGateway& gateway) {
    auto response = gateway.invoke_chat_json(
        TemplateId::judge_accuracy,
        {{"dialogue", dialogue},
         {"golden_memories", golden_memories},
         {"candidate_memory", candidate_memory}},
        {"accuracy_score", "is_included_in_golden_memories", "reason"});

    AccuracyVerdict verdict;
    verdict.accuracy_score = parse_score(response.value.at("accuracy_score"));
    const json& included = response.value.at("is_included_in_golden_memories");
    if (included.is_boolean()) {
        verdict.included_in_gold = included.get<bool>();
    } else if (included.is_string() && (lower(included.get<std::string>()) == "true" ||
                                        lower(included.get<std::string>()) == "false")) {
        verdict.included_in_gold = lower(included.get<std::string>()) == "true";
    } else {
        throw Error(ErrorCode::label_out_of_enum,
                    "is_included_in_golden_memories must be true/false, got " + included.dump());
    }
    verdict.reason =
        response.value.at("reason").is_string() ? response.value.at("reason").get<std::string>() : "";
    return verdict;
}

RateVerdict judge_update(const std::vector<std::string>& memories_after,
                         const std::string& target_update, const std::string& original,
                         ProviderGateway& gateway) {
    if (target_update.empty() || original.empty()) {
        throw Error(ErrorCode::empty_input, "update judging needs target and original text");
    }
    auto response = gateway.invoke_chat_json(TemplateId::judge_update,
                                             {{"memories", bullet_list(memories_after)},
                                              {"updated_memory", target_update},
                                              {"original_memory", original}},
                                             {"reason", "evaluation_result"});
    RateVerdict verdict;
    verdict.label = parse_rate_label(response.value.at("evaluation_result"), /*allow_other=*/true);
    verdict.reasoning =
        response.value.at("reason").is_string() ? response.value.at("reason").get<std::string>() : "";
    return verdict;
}

RateVerdict judge_qa(const std::string& question, const std::string& reference_answer,
                     const std::string& key_points, const std::string& response_text,
                     ProviderGateway& gateway) {
    auto response = gateway.invoke_chat_json(TemplateId::judge_qa,
                                             {{"question", question},
                                              {"reference_answer", reference_answer},
                                              {"key_memory_points", key_points},
                                              {"response", response_text}},
                                             {"reasoning", "evaluation_result"});
    RateVerdict verdict;
    verdict.label = parse_rate_label(response.value.at("evaluation_result"), /*allow_other=*/false);
    verdict.reasoning = response.value.at("reasoning").is_string()
                            ? response.value.at("reasoning").get<std::string>()
                            : "";
    return verdict;
}

IntegrityVerdict judge_retrieval_coverage(const std::vector<std::string>& context,
                                          const std::string& gold_point,
                                          ProviderGateway& gateway) {
    if (gold_point.empty()) {
        throw Error(ErrorCode::empty_input, "gold evidence point is empty");
    }
    auto response = gateway.invoke_chat_json(TemplateId::judge_retrieval_coverage,
                                             {{"retrieved_context", bullet_list(context)},
                                              {"gold_evidence_point", gold_point}},
                                             {"reasoning", "score"});
    return integrity_from_response(response.value);
}

AnswerLabel judge_answer_label(const std::string& question, const std::string& gold_answer,
                               const std::string& generated, ProviderGateway& gateway) {
    auto response = gateway.invoke_chat_json(TemplateId::judge_answer_label,
                                             {{"question", question},
                                              {"gold_answer", gold_answer},
                                              {"generated_answer", generated}},
                                             {"label"});
    const json& label = response.value.at("label");
    std::string text = label.is_string() ? lower(label.get<std::string>()) : "";
    if (text == "correct") return AnswerLabel::correct;
    if (text == "wrong") return AnswerLabel::wrong;
    throw Error(ErrorCode::label_out_of_enum, "label must be CORRECT or WRONG, got " + label.dump());
}

ExtractionMetrics compute_extraction_metrics(const std::vector<WeightedIntegrityVerdict>& integrity,
                                             const std::vector<AccuracyVerdict>& accuracy,
                                             bool partial_counts) {
    if (integrity.empty()) {
        throw Error(ErrorCode::empty_input, "integrity verdict list is empty");
    }
    if (accuracy.empty()) {
        throw Error(ErrorCode::empty_input, "accuracy verdict list is empty");
    }

    ExtractionMetrics metrics;
    double matched = 0.0;
    double weighted_sum = 0.0;
    double weight_total = 0.0;
    for (const auto& item : integrity) {
        bool is_match =
            partial_counts ? item.verdict.raw_score >= 1 : item.verdict.raw_score == 2;
        if (is_match) matched += 1.0;
        weighted_sum += item.weight * item.verdict.s_value;
        weight_total += item.weight;
    }
    metrics.recall = matched / static_cast<double>(integrity.size());
    metrics.weighted_recall = weight_total > 0.0 ? weighted_sum / weight_total : 0.0;

    double correct = 0.0;
    double correct_in_target = 0.0;
    double target = 0.0;
    for (const auto& v : accuracy) {
        if (v.accuracy_score == 2) correct += 1.0;
        if (v.included_in_gold) {
            target += 1.0;
            if (v.accuracy_score == 2) correct_in_target += 1.0;
        }
    }
    // an empty target set reads as zero precision rather than 0/0
    metrics.target_precision = target > 0.0 ? correct_in_target / target : 0.0;
    metrics.accuracy = correct / static_cast<double>(accuracy.size());

    double rp = metrics.recall + metrics.target_precision;
    metrics.f1 = rp > 0.0 ? 2.0 * metrics.recall * metrics.target_precision / rp : 0.0;
    return metrics;
}

Rates compute_rates(const std::vector<RateVerdict>& verdicts) {
    if (verdicts.empty()) {
        throw Error(ErrorCode::empty_input, "verdict list is empty");
    }
    Rates rates;
    for (const auto& v : verdicts) {
        switch (v.label) {
            case RateLabel::correct: rates.correct += 1.0; break;
            case RateLabel::hallucination: rates.hallucination += 1.0; break;
            case RateLabel::omission: rates.omission += 1.0; break;
            case RateLabel::other: rates.other += 1.0; break;
        }
    }
    double total = static_cast<double>(verdicts.size());
    rates.correct /= total;
    rates.hallucination /= total;
    rates.omission /= total;
    rates.other /= total;
    return rates;
}

EvalDataset parse_dataset(const json& doc) {
    if (!doc.is_object()) {
        throw Error(ErrorCode::dataset_parse_error, "dataset root must be an object");
    }
    EvalDataset dataset;
    try {
        for (const auto& c : doc.value("conversations", json::array())) {
            Conversation conversation;
            conversation.id = c.at("conversation_id").get<std::string>();
            conversation.timestamp = c.at("timestamp").get<std::string>();
            for (const auto& m : c.at("messages")) {
                conversation.messages.push_back({m.at("speaker").get<std::string>(),
                                                 m.at("text").get<std::string>(),
                                                 m.at("timestamp").get<std::string>()});
            }
            dataset.conversations.push_back(std::move(conversation));
        }
        for (const auto& g : doc.value("gold_memory_points", json::array())) {
            dataset.gold_memory_points.push_back({g.at("conversation_id").get<std::string>(),
                                                  g.at("content").get<std::string>(),
                                                  g.value("weight", 1.0)});
        }
        for (const auto& u : doc.value("update_cases", json::array())) {
            dataset.update_cases.push_back({u.at("conversation_id").get<std::string>(),
                                            u.at("target_update").get<std::string>(),
                                            u.at("original").get<std::string>()});
        }
        for (const auto& q : doc.value("qa_items", json::array())) {
            EvalDataset::QaItem item;
            item.question = q.at("question").get<std::string>();
            item.reference_answer = q.at("reference_answer").get<std::string>();
            for (const auto& k : q.value("key_points", json::array())) {
                item.key_points.push_back(k.get<std::string>());
            }
            if (q.contains("gold_answer")) item.gold_answer = q.at("gold_answer").get<std::string>();
            dataset.qa_items.push_back(std::move(item));
        }
    } catch (const json::exception& e) {
        throw Error(ErrorCode::dataset_parse_error, e.what());
    }
    for (const auto& g : dataset.gold_memory_points) {
        if (g.weight <= 0.0) {
            throw Error(ErrorCode::dataset_parse_error, "gold point weights must be positive");
        }
    }
    return dataset;
}

EvalDataset load_dataset(const std::filesystem::path& path) {
    auto parsed = json::parse(read_file(path, ErrorCode::dataset_parse_error), nullptr, false);
    if (parsed.is_discarded()) {
        throw Error(ErrorCode::dataset_parse_error, "'" + path.string() + "' is not valid JSON");
    }
    return parse_dataset(parsed);
}

namespace {

/// Runs fn(i) for i in [0, n), optionally across threads; exceptions land
/// in the per-index error slot so one bad item never sinks the suite.
void for_each_item(std::size_t n, int parallelism, std::vector<std::string>& errors,
                   const std::function<void(std::size_t)>& fn) {
    errors.assign(n, "");
    auto run_one = [&](std::size_t i) {
        try {
            fn(i);
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    };
    if (parallelism <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) run_one(i);
        return;
    }
    std::vector<std::thread> workers;
    std::size_t stride = static_cast<std::size_t>(parallelism);
    for (std::size_t w = 0; w < stride && w < n; ++w) {
        workers.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += stride) run_one(i);
        });
    }
    for (auto& t : workers) t.join();
}

json rates_to_json(const Rates& rates) {
    return json{{"correct", rates.correct},
                {"hallucination", rates.hallucination},
                {"omission", rates.omission},
                {"other", rates.other}};
}

}  // namespace

json run_suite(const EvalDataset& dataset, MemoryBackend& backend, ProviderGateway& gateway,
               const std::filesystem::path& report_path, const EvalConfig& config) {
    json report;
    json config_json = {{"backend", backend.name()},
                        {"judge_extraction", config.judge_extraction},
                        {"judge_updates", config.judge_updates},
                        {"judge_qa", config.judge_qa},
                        {"judge_retrieval", config.judge_retrieval},
                        {"judge_answers", config.judge_answers},
                        {"recall_partial_counts", config.recall_partial_counts},
                        {"parallelism", config.parallelism}};
    config_json["fingerprint"] = digest_hex(config_json.dump());
    report["config"] = config_json;

    json per_item = json::array();
    int failed_items = 0;

    std::map<std::string, const Conversation*> conversations_by_id;
    for (const auto& c : dataset.conversations) conversations_by_id[c.id] = &c;

    // ingest
    for (const auto& conversation : dataset.conversations) {
        json item = {{"kind", "ingest"}, {"conversation_id", conversation.id}};
        try {
            backend.ingest(conversation);
            item["status"] = "ok";
        } catch (const std::exception& e) {
            item["status"] = "failed";
            item["error"] = e.what();
            ++failed_items;
        }
        per_item.push_back(std::move(item));
    }

    auto all_memories = backend.memories();
    std::map<std::string, std::vector<std::string>> memories_by_conversation;
    for (const auto& m : all_memories) memories_by_conversation[m.conversation_id].push_back(m.text);

    std::vector<WeightedIntegrityVerdict> integrity_verdicts;
    std::vector<AccuracyVerdict> accuracy_verdicts;

    if (config.judge_extraction) {
        std::vector<std::string> errors;
        std::vector<std::optional<IntegrityVerdict>> results(dataset.gold_memory_points.size());
        for_each_item(dataset.gold_memory_points.size(), config.parallelism, errors,
                      [&](std::size_t i) {
                          const auto& gold = dataset.gold_memory_points[i];
                          results[i] = judge_integrity(
                              memories_by_conversation[gold.conversation_id], gold, gateway);
                      });
        for (std::size_t i = 0; i < results.size(); ++i) {
            const auto& gold = dataset.gold_memory_points[i];
            json item = {{"kind", "integrity"},
                         {"conversation_id", gold.conversation_id},
                         {"content", gold.content},
                         {"weight", gold.weight}};
            if (results[i]) {
                item["score"] = results[i]->raw_score;
                item["s_value"] = results[i]->s_value;
                integrity_verdicts.push_back({*results[i], gold.weight});
            } else {
                item["status"] = "failed";
                item["error"] = errors[i];
                ++failed_items;
            }
            per_item.push_back(std::move(item));
        }

        // accuracy pass over every extracted memory of conversations that
        // carry gold points
        struct Candidate {
            std::string conversation_id;
            std::string text;
        };
        std::vector<Candidate> candidates;
        std::map<std::string, std::vector<std::string>> gold_by_conversation;
        for (const auto& g : dataset.gold_memory_points) {
            gold_by_conversation[g.conversation_id].push_back(g.content);
        }
        for (const auto& [conversation_id, golds] : gold_by_conversation) {
            for (const auto& text : memories_by_conversation[conversation_id]) {
                candidates.push_back({conversation_id, text});
            }
        }
        std::vector<std::string> errors2;
        std::vector<std::optional<AccuracyVerdict>> results2(candidates.size());
        for_each_item(candidates.size(), config.parallelism, errors2, [&](std::size_t i) {
            const auto& candidate = candidates[i];
            auto conversation = conversations_by_id.find(candidate.conversation_id);
            std::string dialogue = conversation != conversations_by_id.end()
                                       ? render_messages(*conversation->second)
                                       : "(conversation unavailable)";
            results2[i] = judge_accuracy(dialogue,
                                         bullet_list(gold_by_conversation[candidate.conversation_id]),
                                         candidate.text, gateway);
        });
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            json item = {{"kind", "accuracy"},
                         {"conversation_id", candidates[i].conversation_id},
                         {"candidate", candidates[i].text}};
            if (results2[i]) {
                item["accuracy_score"] = results2[i]->accuracy_score;
                item["included_in_gold"] = results2[i]->included_in_gold;
                accuracy_verdicts.push_back(*results2[i]);
            } else {
                item["status"] = "failed";
                item["error"] = errors2[i];
                ++failed_items;
            }
            per_item.push_back(std::move(item));
        }
    }

    std::vector<RateVerdict> update_verdicts;
    if (config.judge_updates) {
        std::vector<std::string> errors;
        std::vector<std::optional<RateVerdict>> results(dataset.update_cases.size());
        for_each_item(dataset.update_cases.size(), config.parallelism, errors, [&](std::size_t i) {
            const auto& update_case = dataset.update_cases[i];
            results[i] = judge_update(memories_by_conversation[update_case.conversation_id],
                                      update_case.target_update, update_case.original, gateway);
        });
        for (std::size_t i = 0; i < results.size(); ++i) {
            json item = {{"kind", "update"},
                         {"conversation_id", dataset.update_cases[i].conversation_id},
                         {"target_update", dataset.update_cases[i].target_update}};
            if (results[i]) {
                item["label"] = to_string(results[i]->label);
                update_verdicts.push_back(*results[i]);
            } else {
                item["status"] = "failed";
                item["error"] = errors[i];
                ++failed_items;
            }
            per_item.push_back(std::move(item));
        }
    }

    std::vector<RateVerdict> qa_verdicts;
    std::vector<IntegrityVerdict> coverage_verdicts;
    int answer_correct = 0;
    int answer_total = 0;
    if (config.judge_qa || config.judge_retrieval || config.judge_answers) {
        for (const auto& qa : dataset.qa_items) {
            json item = {{"kind", "qa"}, {"question", qa.question}};
            try {
                auto context = backend.retrieve(qa.question);
                std::string response = backend.answer(qa.question);
                item["response"] = response;

                if (config.judge_qa) {
                    auto verdict = judge_qa(qa.question, qa.reference_answer,
                                            bullet_list(qa.key_points), response, gateway);
                    item["label"] = to_string(verdict.label);
                    qa_verdicts.push_back(verdict);
                }
                if (config.judge_retrieval) {
                    json coverage = json::array();
                    for (const auto& point : qa.key_points) {
                        auto verdict = judge_retrieval_coverage(context, point, gateway);
                        coverage.push_back({{"point", point}, {"score", verdict.raw_score}});
                        coverage_verdicts.push_back(verdict);
                    }
                    item["coverage"] = std::move(coverage);
                }
                if (config.judge_answers && qa.gold_answer) {
                    auto label = judge_answer_label(qa.question, *qa.gold_answer, response, gateway);
                    item["answer_label"] = label == AnswerLabel::correct ? "CORRECT" : "WRONG";
                    ++answer_total;
                    if (label == AnswerLabel::correct) ++answer_correct;
                }
            } catch (const std::exception& e) {
                item["status"] = "failed";
                item["error"] = e.what();
                ++failed_items;
            }
            per_item.push_back(std::move(item));
        }
    }

    report["per_item"] = std::move(per_item);
    json aggregates;
    if (!integrity_verdicts.empty() && !accuracy_verdicts.empty()) {
        auto metrics = compute_extraction_metrics(integrity_verdicts, accuracy_verdicts,
                                                  config.recall_partial_counts);
        aggregates["extraction"] = {{"recall", metrics.recall},
                                    {"weighted_recall", metrics.weighted_recall},
                                    {"target_precision", metrics.target_precision},
                                    {"accuracy", metrics.accuracy},
                                    {"f1", metrics.f1}};
    }
    if (!update_verdicts.empty()) {
        aggregates["update_rates"] = rates_to_json(compute_rates(update_verdicts));
    }
    if (!qa_verdicts.empty()) {
        aggregates["qa_rates"] = rates_to_json(compute_rates(qa_verdicts));
    }
    if (!coverage_verdicts.empty()) {
        double total = 0.0;
        for (const auto& v : coverage_verdicts) total += v.s_value;
        aggregates["retrieval_coverage"] = total / static_cast<double>(coverage_verdicts.size());
    }
    if (answer_total > 0) {
        aggregates["answer_accuracy"] =
            static_cast<double>(answer_correct) / static_cast<double>(answer_total);
    }
    aggregates["items_failed"] = failed_items;
    report["aggregates"] = std::move(aggregates);

    if (!report_path.empty()) {
        write_file_atomic(report_path, report.dump(2) + "\n", ErrorCode::report_io_failure);
    }
    return report;
}

json run_suite(const std::filesystem::path& dataset_path, MemoryBackend& backend,
               ProviderGateway& gateway, const std::filesystem::path& report_path,
               const EvalConfig& config) {
    return run_suite(load_dataset(dataset_path), backend, gateway, report_path, config);
}

}  // namespace memguard
