#include "clts/prompting/backend.hpp"

#include <sstream>

#include "clts/common/error.hpp"
#include "clts/common/hash.hpp"
#include "clts/common/http.hpp"
#include "clts/common/language.hpp"
#include "clts/common/utf8.hpp"
#include "clts/prompting/strategy.hpp"

namespace clts::prompting {

HttpChatBackend::HttpChatBackend(BackendConfig config) : config_(std::move(config)) {
    if (config_.model.empty()) throw ConfigError("backend '" + config_.name + "' has no model");
    model_id_ = config_.name.empty() ? config_.model : config_.name;
    std::string base = config_.base_url;
    while (!base.empty() && base.back() == '/') base.pop_back();
    url_ = base + "/chat/completions";
    http::parse_url(url_);
}

std::string HttpChatBackend::complete(const ChatRequest& request) {
    nlohmann::json body = {
        {"model", config_.model},
        {"messages",
         {{{"role", "system"}, {"content", request.system_prompt}},
          {{"role", "user"}, {"content", request.user_prompt}}}},
        {"temperature", request.temperature},
        {"top_p", request.top_p},
    };
    http::Headers headers;
    if (const auto key = http::api_key_from_env(config_.key_env); !key.empty())
        headers.emplace_back("Authorization", "Bearer " + key);

    nlohmann::json response;
    http::HttpFailure failure;
    if (!http::post_json(url_, body, headers, config_.timeout, response, failure))
        throw BackendError(model_id_ + ": " + failure.message);
    try {
        const auto& content = response.at("choices").at(0).at("message").at("content");
        if (content.is_null()) return {};
        return content.get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw BackendError(model_id_ + ": unexpected response shape: " + e.what());
    }
}

MockBackend::MockBackend(std::string kind, std::string model_id)
    : kind_(std::move(kind)), model_id_(std::move(model_id)) {
    if (kind_.empty()) kind_ = "simplify";
    if (kind_ != "echo" && kind_ != "simplify" && kind_ != "fail" && kind_.rfind("constant:", 0) != 0)
        throw ConfigError("unknown mock backend kind '" + kind_ + "'");
}

namespace {

// Drops parenthesised spans and every word whose letter count reaches
// `max_letters`; collapses whitespace.
std::string mock_simplify(std::string_view text, std::size_t max_letters) {
    std::string without_parens;
    int depth = 0;
    for (char c : text) {
        if (c == '(') ++depth;
        else if (c == ')' && depth > 0) --depth;
        else if (depth == 0) without_parens.push_back(c);
    }
    std::istringstream words(without_parens);
    std::string word;
    std::string out;
    while (words >> word) {
        if (utf8::letter_count(word) >= max_letters) {
            // keep trailing sentence punctuation of a dropped word
            const char last = word.back();
            if ((last == '.' || last == ',' || last == '!' || last == '?') && !out.empty())
                out.push_back(last);
            continue;
        }
        if (!out.empty()) out.push_back(' ');
        out += word;
    }
    return out.empty() ? std::string(utf8::trim(text)) : out;
}

}  // namespace

std::string MockBackend::complete(const ChatRequest& request) {
    if (kind_ == "echo") return request.user_prompt;
    if (kind_ == "fail") throw BackendError(model_id_ + ": mock failure");
    if (kind_.rfind("constant:", 0) == 0) return kind_.substr(9);

    // Recognise which template produced the prompt.
    for (Strategy s : kAllStrategies) {
        for (Language lang : {Language::en, Language::fr}) {
            for (const auto& step : prompt_steps(s, lang)) {
                if (request.user_prompt.rfind(step.prefix, 0) != 0) continue;
                const std::string_view payload =
                    std::string_view(request.user_prompt).substr(step.prefix.size());
                if (step.prefix.find("simplify") == std::string::npos)
                    return std::string(utf8::trim(payload));
                const std::size_t max_letters = 8 + fnv1a64(step.prefix) % 5;
                return mock_simplify(payload, max_letters);
            }
        }
    }
    return std::string(utf8::trim(request.user_prompt));
}

std::unique_ptr<GenerationBackend> make_backend(const BackendConfig& config) {
    if (config.base_url.rfind("mock:", 0) == 0) {
        std::string id = !config.name.empty() ? config.name
                         : !config.model.empty() ? config.model
                                                 : config.base_url;
        return std::make_unique<MockBackend>(config.base_url.substr(5), std::move(id));
    }
    return std::make_unique<HttpChatBackend>(config);
}

}  // namespace clts::prompting
