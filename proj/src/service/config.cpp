#include "memguard/service/config.hpp"

#include <cstdlib>

#include "memguard/errors.hpp"
#include "memguard/gateway/http_provider.hpp"
#include "memguard/util/fs.hpp"

namespace memguard {

namespace {

std::string trim(const std::string& s) {
    auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

bool parse_bool(const std::string& value, const std::string& key) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw Error(ErrorCode::parse_error, "config key '" + key + "' wants a boolean, got '" + value + "'");
}

int parse_int(const std::string& value, const std::string& key) {
    try {
        return std::stoi(value);
    } catch (const std::exception&) {
        throw Error(ErrorCode::parse_error, "config key '" + key + "' wants an integer, got '" + value + "'");
    }
}

double parse_double(const std::string& value, const std::string& key) {
    try {
        return std::stod(value);
    } catch (const std::exception&) {
        throw Error(ErrorCode::parse_error, "config key '" + key + "' wants a number, got '" + value + "'");
    }
}

}  // namespace

ServiceConfig ServiceConfig::load_file(const std::filesystem::path& path) {
    ServiceConfig config;
    std::string content = read_file(path, ErrorCode::parse_error);
    std::size_t line_number = 0;
    std::size_t pos = 0;
    while (pos <= content.size()) {
        std::size_t eol = content.find('\n', pos);
        std::string line = content.substr(pos, eol == std::string::npos ? eol : eol - pos);
        pos = eol == std::string::npos ? content.size() + 1 : eol + 1;
        ++line_number;

        std::string trimmed = trim(line);
        if (trimmed.empty() || trimmed[0] == '#') continue;
        auto eq = trimmed.find('=');
        if (eq == std::string::npos) {
            throw Error(ErrorCode::parse_error,
                        "config line " + std::to_string(line_number) + " lacks '='");
        }
        std::string key = trim(trimmed.substr(0, eq));
        std::string value = trim(trimmed.substr(eq + 1));

        if (key == "listen_address") config.listen_address = value;
        else if (key == "snapshot_path") config.snapshot_path = value;
        else if (key == "chat.model") config.chat_model = value;
        else if (key == "chat.base_url") config.chat_base_url = value;
        else if (key == "chat.api_key") config.chat_api_key = value;
        else if (key == "embed.model") config.embed_model = value;
        else if (key == "embed.base_url") config.embed_base_url = value;
        else if (key == "embed.dimension") config.embed_dimension = static_cast<std::size_t>(parse_int(value, key));
        else if (key == "embed.cache_path") config.embed_cache_path = value;
        else if (key == "retrieve.budget_k") config.retrieve.budget_k = parse_int(value, key);
        else if (key == "retrieve.h_max") config.retrieve.h_max = parse_int(value, key);
        else if (key == "retrieve.lambda") config.retrieve.lambda = parse_double(value, key);
        else if (key == "retrieve.renorm_tolerance") config.retrieve.renorm_tolerance = parse_double(value, key);
        else if (key == "retrieve.anchors_in_pool") config.retrieve.anchors_in_pool = parse_bool(value, key);
        else if (key == "write.candidate_n") config.write.candidate_n = parse_int(value, key);
        else if (key == "recall.partial_counts") config.recall_partial_counts = parse_bool(value, key);
        else if (key == "eval.parallelism") config.eval_parallelism = parse_int(value, key);
        else if (key == "mock") config.mock = parse_bool(value, key);
        else if (key == "mock.script_dir") config.mock_script_dir = value;
        else {
            throw Error(ErrorCode::parse_error, "unknown config key '" + key + "' on line " +
                                                    std::to_string(line_number));
        }
    }
    return config;
}

void ServiceConfig::apply_env() {
    auto from_env = [](const char* name, std::string& target) {
        if (const char* value = std::getenv(name); value && *value) target = value;
    };
    from_env("MEMGUARD_CHAT_API_KEY", chat_api_key);
    from_env("MEMGUARD_CHAT_MODEL", chat_model);
    from_env("MEMGUARD_CHAT_BASE_URL", chat_base_url);
    from_env("MEMGUARD_EMBED_MODEL", embed_model);
    from_env("MEMGUARD_EMBED_BASE_URL", embed_base_url);
}

void ServiceConfig::validate() const {
    if (retrieve.budget_k < 1) throw Error(ErrorCode::bad_request, "retrieve.budget_k must be >= 1");
    if (retrieve.h_max < 0) throw Error(ErrorCode::bad_request, "retrieve.h_max must be >= 0");
    if (retrieve.lambda <= 0.0 || retrieve.lambda >= 1.0) {
        throw Error(ErrorCode::bad_request, "retrieve.lambda must lie in (0, 1)");
    }
    if (retrieve.renorm_tolerance < 0.0) {
        throw Error(ErrorCode::bad_request, "retrieve.renorm_tolerance must be >= 0");
    }
    if (write.candidate_n < 1) throw Error(ErrorCode::bad_request, "write.candidate_n must be >= 1");
    if (embed_dimension < 1) throw Error(ErrorCode::bad_request, "embed.dimension must be >= 1");
    if (eval_parallelism < 1) throw Error(ErrorCode::bad_request, "eval.parallelism must be >= 1");
}

MockChatProvider::Script load_mock_script_dir(const std::filesystem::path& dir) {
    MockChatProvider::Script script;
    for (const auto& tmpl : all_prompt_templates()) {
        auto file = dir / (std::string(to_string(tmpl.id)) + ".json");
        if (!std::filesystem::exists(file)) continue;
        auto parsed = nlohmann::json::parse(read_file(file), nullptr, false);
        if (parsed.is_discarded() || !parsed.is_array()) {
            throw Error(ErrorCode::parse_error,
                        "mock script '" + file.string() + "' must be a JSON array of strings");
        }
        for (const auto& completion : parsed) {
            if (!completion.is_string()) {
                throw Error(ErrorCode::parse_error,
                            "mock script '" + file.string() + "' holds a non-string entry");
            }
            script[tmpl.id].push_back(completion.get<std::string>());
        }
    }
    return script;
}

std::shared_ptr<ProviderGateway> make_gateway(const ServiceConfig& config) {
    std::shared_ptr<EmbeddingCache> cache;
    if (!config.embed_cache_path.empty()) {
        cache = std::make_shared<EmbeddingCache>(config.embed_cache_path);
    }

    if (config.mock) {
        MockChatProvider::Script script;
        if (!config.mock_script_dir.empty()) {
            script = load_mock_script_dir(config.mock_script_dir);
        }
        return std::make_shared<ProviderGateway>(
            std::make_shared<MockChatProvider>(std::move(script)),
            std::make_shared<MockEmbeddingProvider>(config.embed_dimension), cache);
    }

    ChatProviderConfig chat{config.chat_model, config.chat_base_url, config.chat_api_key};
    EmbeddingProviderConfig embed;
    embed.model_name = config.embed_model;
    embed.dimension = config.embed_dimension;
    embed.endpoint = config.embed_base_url;
    embed.api_key = config.chat_api_key;
    if (!config.embed_cache_path.empty()) embed.cache_path = config.embed_cache_path;
    return std::make_shared<ProviderGateway>(std::make_shared<HttpChatProvider>(chat),
                                             std::make_shared<HttpEmbeddingProvider>(embed), cache);
}

}  // namespace memguard
