#include "memguard/service/server.hpp"

#include <httplib.h>

#include <nlohmann/json.hpp>
#include <sstream>

#include "memguard/errors.hpp"
#include "memguard/eval/harness.hpp"
#include "memguard/persist/snapshot.hpp"
#include "memguard/retrieve/engine.hpp"
#include "memguard/write/conversation.hpp"
#include "memguard/write/pipeline.hpp"

namespace memguard {

namespace {

using nlohmann::json;

int status_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::bad_request:
        case ErrorCode::empty_query:
        case ErrorCode::empty_conversation:
        case ErrorCode::conversation_parse:
        case ErrorCode::dataset_parse_error:
        case ErrorCode::missing_slot:
            return 400;
        case ErrorCode::unknown_id:
        case ErrorCode::unknown_node:
            return 404;
        case ErrorCode::provider_unreachable:
        case ErrorCode::script_exhausted:
        case ErrorCode::unscripted_template:
            return 502;
        default:
            return 500;
    }
}

void reply_error(httplib::Response& response, ErrorCode code, const std::string& message) {
    response.status = status_for(code);
    response.set_content(
        json{{"error", {{"code", error_code_name(code)}, {"message", message}}}}.dump(2),
        "application/json");
}

void reply_json(httplib::Response& response, const json& body, int status = 200) {
    response.status = status;
    response.set_content(body.dump(2), "application/json");
}

/// Runs a handler, translating errors into the wire error shape. No stack
/// traces ever reach the client.
template <typename Fn>
void guarded(httplib::Response& response, Fn&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        reply_error(response, e.code(), e.what());
    } catch (const std::exception& e) {
        reply_error(response, ErrorCode::bad_request, e.what());
    }
}

json parse_body(const httplib::Request& request) {
    auto parsed = json::parse(request.body, nullptr, false);
    if (parsed.is_discarded() || !parsed.is_object()) {
        throw Error(ErrorCode::bad_request, "request body must be a JSON object");
    }
    return parsed;
}

}  // namespace

MemoryService::MemoryService(ServiceConfig config)
    : config_(std::move(config)), gateway_(make_gateway(config_)), stores_(1) {
    config_.validate();
    if (!config_.snapshot_path.empty() && std::filesystem::exists(config_.snapshot_path)) {
        try {
            auto [stores, graph] = load_snapshot(config_.snapshot_path);
            stores_ = std::move(stores);
            graph_ = std::move(graph);
        } catch (const Error& e) {
            throw Error(ErrorCode::snapshot_load_failure, e.what());
        }
        if (stores_.embedding_dimension() != gateway_->embedding_dimension()) {
            throw Error(ErrorCode::snapshot_load_failure,
                        "snapshot dimension " + std::to_string(stores_.embedding_dimension()) +
                            " does not match provider dimension " +
                            std::to_string(gateway_->embedding_dimension()));
        }
    } else {
        stores_ = TypedStoreSet(gateway_->embedding_dimension());
    }
}

MemoryService::~MemoryService() { stop(); }

std::size_t MemoryService::atom_count() const {
    std::shared_lock lock(state_mutex_);
    return stores_.size();
}

void MemoryService::install_routes() {
    http_->Get("/health", [this](const httplib::Request&, httplib::Response& response) {
        guarded(response, [&] {
            std::shared_lock lock(state_mutex_);
            reply_json(response, json{{"status", "ok"}, {"atoms", stores_.size()}});
        });
    });

    http_->Post("/v1/conversations", [this](const httplib::Request& request,
                                            httplib::Response& response) {
        guarded(response, [&] {
            std::istringstream body(request.body);
            auto conversations = parse_conversations_jsonl(body);
            json reports = json::array();
            std::unique_lock lock(state_mutex_);
            for (const auto& conversation : conversations) {
                auto report =
                    ingest_conversation(conversation, stores_, graph_, *gateway_, config_.write);
                if (!config_.snapshot_path.empty()) {
                    save_snapshot(stores_, graph_, config_.snapshot_path);
                }
                json entry = report.to_json();
                entry["conversation_id"] = conversation.id;
                reports.push_back(std::move(entry));
            }
            reply_json(response, json{{"reports", reports}});
        });
    });

    http_->Post("/v1/retrieve", [this](const httplib::Request& request,
                                       httplib::Response& response) {
        guarded(response, [&] {
            json body = parse_body(request);
            if (!body.contains("query") || !body.at("query").is_string()) {
                throw Error(ErrorCode::bad_request, "body needs a string 'query'");
            }
            RetrieveConfig rc = config_.retrieve;
            if (body.contains("k")) rc.budget_k = body.at("k").get<int>();
            if (body.contains("hops")) rc.h_max = body.at("hops").get<int>();
            std::shared_lock lock(state_mutex_);
            auto context =
                retrieve(body.at("query").get<std::string>(), stores_, graph_, *gateway_, rc);
            reply_json(response, context.to_json(stores_));
        });
    });

    http_->Post("/v1/answer", [this](const httplib::Request& request,
                                     httplib::Response& response) {
        guarded(response, [&] {
            json body = parse_body(request);
            if (!body.contains("query") || !body.at("query").is_string()) {
                throw Error(ErrorCode::bad_request, "body needs a string 'query'");
            }
            RetrieveConfig rc = config_.retrieve;
            if (body.contains("k")) rc.budget_k = body.at("k").get<int>();
            if (body.contains("hops")) rc.h_max = body.at("hops").get<int>();
            std::shared_lock lock(state_mutex_);
            std::string query = body.at("query").get<std::string>();
            auto context = retrieve(query, stores_, graph_, *gateway_, rc);
            reply_json(response, json{{"answer", answer(query, context, stores_, *gateway_)},
                                      {"context", context.to_json(stores_)}});
        });
    });

    http_->Get("/v1/memories", [this](const httplib::Request& request,
                                      httplib::Response& response) {
        guarded(response, [&] {
            std::size_t limit = 100;
            if (request.has_param("limit")) {
                limit = static_cast<std::size_t>(std::stoul(request.get_param_value("limit")));
            }
            std::shared_lock lock(state_mutex_);
            json memories = json::array();
            auto append = [&](MemoryType type) {
                for (const auto& atom : stores_.store(type)) {
                    if (memories.size() >= limit) return;
                    memories.push_back({{"id", atom.id},
                                        {"type", to_string(atom.mem_type)},
                                        {"title", atom.title},
                                        {"details", atom.details},
                                        {"time", atom.event_time.raw},
                                        {"created_at", atom.created_at},
                                        {"revisions", atom.revisions.size()}});
                }
            };
            if (request.has_param("type")) {
                auto type = memory_type_from_string(request.get_param_value("type"));
                if (!type) {
                    throw Error(ErrorCode::bad_request,
                                "type must be semantic, episodic or procedural");
                }
                append(*type);
            } else {
                for (MemoryType type : kMemoryTypes) append(type);
            }
            reply_json(response, json{{"memories", memories}});
        });
    });

    http_->Get(R"(/v1/graph/([^/]+))", [this](const httplib::Request& request,
                                              httplib::Response& response) {
        guarded(response, [&] {
            int hops = 1;
            if (request.has_param("hops")) hops = std::stoi(request.get_param_value("hops"));
            std::shared_lock lock(state_mutex_);
            json neighbors = json::array();
            for (const auto& hit : neighbors_within(graph_, request.matches[1].str(), hops)) {
                std::string chain;
                for (const auto& r : hit.chain) {
                    if (!chain.empty()) chain += " -> ";
                    chain += r.name();
                }
                neighbors.push_back(
                    {{"id", hit.node}, {"depth", hit.depth}, {"relations", chain}});
            }
            reply_json(response, json{{"neighbors", neighbors}});
        });
    });

    http_->Post("/v1/eval/run", [this](const httplib::Request& request,
                                       httplib::Response& response) {
        guarded(response, [&] {
            json body = parse_body(request);
            if (!body.contains("dataset_path") || !body.at("dataset_path").is_string()) {
                throw Error(ErrorCode::bad_request, "body needs a string 'dataset_path'");
            }
            std::string dataset_path = body.at("dataset_path").get<std::string>();
            std::string report_path = body.value("report_path", dataset_path + ".report.json");
            std::string backend_name = body.value("backend", "memguard");
            if (backend_name != "memguard" && backend_name != "flat") {
                throw Error(ErrorCode::bad_request, "backend must be 'memguard' or 'flat'");
            }
            auto dataset = load_dataset(dataset_path);  // validate before going async

            std::string run_id = "run-" + std::to_string(next_run_id_++);
            {
                std::lock_guard lock(eval_mutex_);
                eval_runs_[run_id] = {"running", report_path, ""};
            }
            eval_threads_.emplace_back([this, dataset = std::move(dataset), report_path,
                                        backend_name, run_id] {
                EvalRun result{"done", report_path, ""};
                try {
                    EvalConfig eval_config;
                    eval_config.recall_partial_counts = config_.recall_partial_counts;
                    eval_config.parallelism = config_.eval_parallelism;
                    if (backend_name == "flat") {
                        FlatStoreBackend backend(gateway_, config_.retrieve.budget_k);
                        run_suite(dataset, backend, *gateway_, report_path, eval_config);
                    } else {
                        MemguardBackend backend(gateway_, config_.write, config_.retrieve);
                        run_suite(dataset, backend, *gateway_, report_path, eval_config);
                    }
                } catch (const std::exception& e) {
                    result.status = "failed";
                    result.error = e.what();
                }
                std::lock_guard lock(eval_mutex_);
                eval_runs_[run_id] = result;
            });
            reply_json(response, json{{"run_id", run_id}, {"status", "running"}}, 202);
        });
    });

    http_->Get(R"(/v1/eval/run/([^/]+))", [this](const httplib::Request& request,
                                                 httplib::Response& response) {
        guarded(response, [&] {
            std::lock_guard lock(eval_mutex_);
            auto it = eval_runs_.find(request.matches[1].str());
            if (it == eval_runs_.end()) {
                throw Error(ErrorCode::unknown_id, "no eval run '" + request.matches[1].str() + "'");
            }
            json body = {{"run_id", it->first},
                         {"status", it->second.status},
                         {"report_path", it->second.report_path}};
            if (!it->second.error.empty()) body["error"] = it->second.error;
            reply_json(response, body);
        });
    });
}

void MemoryService::start() {
    http_ = std::make_unique<httplib::Server>();
    install_routes();

    std::string host = "127.0.0.1";
    int port = 0;
    auto colon = config_.listen_address.rfind(':');
    if (colon != std::string::npos) {
        host = config_.listen_address.substr(0, colon);
        port = std::stoi(config_.listen_address.substr(colon + 1));
    }

    if (port == 0) {
        port_ = http_->bind_to_any_port(host);
        if (port_ <= 0) {
            throw Error(ErrorCode::bind_failure, "cannot bind to " + host);
        }
    } else {
        if (!http_->bind_to_port(host, port)) {
            throw Error(ErrorCode::bind_failure, "cannot bind to " + config_.listen_address);
        }
        port_ = port;
    }
    serve_thread_ = std::thread([this] { http_->listen_after_bind(); });
    http_->wait_until_ready();
}

void MemoryService::stop() {
    if (http_) http_->stop();
    if (serve_thread_.joinable()) serve_thread_.join();
    for (auto& t : eval_threads_) {
        if (t.joinable()) t.join();
    }
    eval_threads_.clear();
}

}  // namespace memguard
