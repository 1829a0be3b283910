// memguard command line: ingest conversations, query the store, run the
// evaluation suite, inspect snapshots, or serve the HTTP API.

#include <CLI11.hpp>
#include <atomic>
#include <chrono>
#include <csignal>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <thread>

#include "memguard/errors.hpp"
#include "memguard/eval/harness.hpp"
#include "memguard/persist/snapshot.hpp"
#include "memguard/retrieve/engine.hpp"
#include "memguard/service/config.hpp"
#include "memguard/service/server.hpp"
#include "memguard/util/fs.hpp"
#include "memguard/write/conversation.hpp"
#include "memguard/write/pipeline.hpp"

namespace {

using memguard::Conversation;
using memguard::KnowledgeGraph;
using memguard::ServiceConfig;
using memguard::TypedStoreSet;
using nlohmann::json;

struct CommonOptions {
    std::string config_path;
    std::string snapshot_path;
    std::string mock_dir;
    bool mock = false;
    int dimension = 0;
};

void add_common(CLI::App* cmd, CommonOptions& options) {
    cmd->add_option("--config", options.config_path, "config file (key = value lines)");
    cmd->add_option("--snapshot", options.snapshot_path, "snapshot file to load and persist");
    cmd->add_option("--mock", options.mock_dir,
                    "mock mode: directory of canned completions (<template_id>.json)")
        ->expected(0, 1);
    cmd->add_option("--dim", options.dimension, "embedding dimension override");
}

ServiceConfig build_config(const CommonOptions& options, CLI::App* cmd) {
    ServiceConfig config;
    if (!options.config_path.empty()) config = ServiceConfig::load_file(options.config_path);
    config.apply_env();
    if (!options.snapshot_path.empty()) config.snapshot_path = options.snapshot_path;
    if (cmd->count("--mock") > 0) {
        config.mock = true;
        config.mock_script_dir = options.mock_dir;
    }
    if (options.dimension > 0) config.embed_dimension = static_cast<std::size_t>(options.dimension);
    return config;
}

struct EngineState {
    TypedStoreSet stores;
    KnowledgeGraph graph;
};

EngineState load_state(const ServiceConfig& config, std::size_t dimension) {
    if (!config.snapshot_path.empty() && std::filesystem::exists(config.snapshot_path)) {
        auto [stores, graph] = memguard::load_snapshot(config.snapshot_path);
        if (stores.embedding_dimension() != dimension) {
            throw memguard::Error(memguard::ErrorCode::snapshot_load_failure,
                                  "snapshot dimension " +
                                      std::to_string(stores.embedding_dimension()) +
                                      " does not match configured dimension " +
                                      std::to_string(dimension));
        }
        return {std::move(stores), std::move(graph)};
    }
    return {TypedStoreSet(dimension), KnowledgeGraph{}};
}

int fail(const memguard::Error& e) {
    std::cerr << json{{"error",
                       {{"code", memguard::error_code_name(e.code())}, {"message", e.what()}}}}
                     .dump(2)
              << "\n";
    return 1;
}

int fail(const std::exception& e) {
    std::cerr << json{{"error", {{"code", "unexpected"}, {"message", e.what()}}}}.dump(2) << "\n";
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"memguard - type-aware long-term memory engine"};
    app.require_subcommand(1);

    // ingest
    auto* ingest_cmd = app.add_subcommand("ingest", "ingest a JSONL conversation file");
    CommonOptions ingest_options;
    std::string ingest_file;
    bool ingest_json = false;
    ingest_cmd->add_option("file", ingest_file, "conversation JSONL file")->required();
    add_common(ingest_cmd, ingest_options);
    ingest_cmd->add_flag("--json", ingest_json, "print the write report as JSON (default)");

    // query
    auto* query_cmd = app.add_subcommand("query", "retrieve memories for a question");
    CommonOptions query_options;
    std::string query_text;
    int query_k = 0;
    int query_hops = -1;
    double query_lambda = 0.0;
    bool query_json = false;
    bool query_answer = false;
    query_cmd->add_option("query", query_text, "the question")->required();
    add_common(query_cmd, query_options);
    query_cmd->add_option("--k", query_k, "retrieval budget K");
    query_cmd->add_option("--hops", query_hops, "BFS expansion depth");
    query_cmd->add_option("--lambda", query_lambda, "hop decay factor");
    query_cmd->add_flag("--json", query_json, "print the full retrieval context as JSON");
    query_cmd->add_flag("--answer", query_answer, "also generate a grounded answer");

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "run the evaluation suite on a dataset");
    CommonOptions eval_options;
    std::string eval_dataset;
    std::string eval_report = "eval-report.json";
    std::string eval_backend = "memguard";
    eval_cmd->add_option("dataset", eval_dataset, "dataset JSON file")->required();
    add_common(eval_cmd, eval_options);
    eval_cmd->add_option("--report", eval_report, "report output path");
    eval_cmd->add_option("--backend", eval_backend, "memguard | flat")
        ->check(CLI::IsMember({"memguard", "flat"}));

    // dump
    auto* dump_cmd = app.add_subcommand("dump", "print store statistics or a full snapshot");
    CommonOptions dump_options;
    bool dump_stats = false;
    add_common(dump_cmd, dump_options);
    dump_cmd->add_flag("--stats", dump_stats, "print counts only");

    // serve
    auto* serve_cmd = app.add_subcommand("serve", "run the HTTP service");
    CommonOptions serve_options;
    std::string serve_listen;
    add_common(serve_cmd, serve_options);
    serve_cmd->add_option("--listen", serve_listen, "listen address host:port");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*ingest_cmd) {
            auto config = build_config(ingest_options, ingest_cmd);
            config.validate();
            auto gateway = memguard::make_gateway(config);
            auto state = load_state(config, gateway->embedding_dimension());

            std::ifstream input(ingest_file);
            if (!input) {
                throw memguard::Error(memguard::ErrorCode::io_failure,
                                      "cannot open '" + ingest_file + "'");
            }
            auto conversations = memguard::parse_conversations_jsonl(input);
            json reports = json::array();
            for (const auto& conversation : conversations) {
                auto report = memguard::ingest_conversation(conversation, state.stores,
                                                            state.graph, *gateway, config.write);
                json entry = report.to_json();
                entry["conversation_id"] = conversation.id;
                reports.push_back(std::move(entry));
            }
            if (!config.snapshot_path.empty()) {
                memguard::save_snapshot(state.stores, state.graph, config.snapshot_path);
            }
            std::cout << (reports.size() == 1 ? reports[0] : reports).dump(2) << "\n";
            return 0;
        }

        if (*query_cmd) {
            auto config = build_config(query_options, query_cmd);
            if (query_k > 0) config.retrieve.budget_k = query_k;
            if (query_hops >= 0) config.retrieve.h_max = query_hops;
            if (query_lambda > 0.0) config.retrieve.lambda = query_lambda;
            config.validate();
            auto gateway = memguard::make_gateway(config);
            auto state = load_state(config, gateway->embedding_dimension());

            auto context =
                memguard::retrieve(query_text, state.stores, state.graph, *gateway, config.retrieve);
            json output = context.to_json(state.stores);
            if (query_answer) {
                output["answer"] = memguard::answer(query_text, context, state.stores, *gateway);
            }
            if (query_json) {
                std::cout << output.dump(2) << "\n";
            } else {
                std::size_t index = 1;
                for (const auto& entry : context.entries) {
                    std::cout << index++ << ". [" << entry.score << "] " << entry.rendered << "\n";
                }
                if (query_answer) std::cout << "answer: " << output["answer"].get<std::string>() << "\n";
            }
            return 0;
        }

        if (*eval_cmd) {
            auto config = build_config(eval_options, eval_cmd);
            config.validate();
            auto gateway = memguard::make_gateway(config);
            memguard::EvalConfig eval_config;
            eval_config.recall_partial_counts = config.recall_partial_counts;
            eval_config.parallelism = config.eval_parallelism;

            json report;
            if (eval_backend == "flat") {
                memguard::FlatStoreBackend backend(gateway, config.retrieve.budget_k);
                report = memguard::run_suite(std::filesystem::path(eval_dataset), backend,
                                             *gateway, eval_report, eval_config);
            } else {
                memguard::MemguardBackend backend(gateway, config.write, config.retrieve);
                report = memguard::run_suite(std::filesystem::path(eval_dataset), backend,
                                             *gateway, eval_report, eval_config);
            }
            std::cout << report["aggregates"].dump(2) << "\n";
            return 0;
        }

        if (*dump_cmd) {
            auto config = build_config(dump_options, dump_cmd);
            EngineState state = {TypedStoreSet(config.embed_dimension), KnowledgeGraph{}};
            if (!config.snapshot_path.empty() && std::filesystem::exists(config.snapshot_path)) {
                auto [stores, graph] = memguard::load_snapshot(config.snapshot_path);
                state = {std::move(stores), std::move(graph)};
            }
            if (dump_stats) {
                auto sizes = state.stores.sizes();
                std::cout << json{{"atoms", state.stores.size()},
                                  {"edges", state.graph.edge_count()},
                                  {"semantic", sizes[0]},
                                  {"episodic", sizes[1]},
                                  {"procedural", sizes[2]}}
                                 .dump(2)
                          << "\n";
            } else {
                std::cout << memguard::snapshot_to_json(state.stores, state.graph).dump(2) << "\n";
            }
            return 0;
        }

        if (*serve_cmd) {
            auto config = build_config(serve_options, serve_cmd);
            if (!serve_listen.empty()) config.listen_address = serve_listen;
            config.validate();
            memguard::MemoryService service(config);
            service.start();
            std::cout << json{{"listening", config.listen_address},
                              {"port", service.port()},
                              {"atoms", service.atom_count()}}
                             .dump(2)
                      << std::endl;
            // foreground until interrupted
            static std::atomic<bool> interrupted{false};
            std::signal(SIGINT, [](int) { interrupted = true; });
            std::signal(SIGTERM, [](int) { interrupted = true; });
            while (!interrupted) {
                std::this_thread::sleep_for(std::chrono::milliseconds(100));
            }
            service.stop();
            return 0;
        }
    } catch (const memguard::Error& e) {
        return fail(e);
    } catch (const std::exception& e) {
        return fail(e);
    }
    return 0;
}
