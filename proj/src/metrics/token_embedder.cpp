#include "clts/metrics/token_embedder.hpp"

#include <fstream>

#include "clts/common/error.hpp"
#include "clts/common/hash.hpp"
#include "clts/common/http.hpp"
#include "clts/common/utf8.hpp"
#include "clts/metrics/tokenize.hpp"

namespace clts::metrics {

namespace {

TokenEmbedding from_json(const nlohmann::json& tokens, const nlohmann::json& vectors) {
    TokenEmbedding e;
    e.tokens = tokens.get<std::vector<std::string>>();
    const auto rows = vectors.get<std::vector<std::vector<double>>>();
    if (rows.size() != e.tokens.size())
        throw std::invalid_argument("token and vector counts differ");
    const std::size_t dim = rows.empty() ? 0 : rows.front().size();
    e.vectors.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != dim) throw std::invalid_argument("ragged token vectors");
        for (std::size_t j = 0; j < dim; ++j)
            e.vectors(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
    return e;
}

std::string table_key(const std::string& lang, const std::string& text) { return lang + '\x1f' + text; }

}  // namespace

HttpTokenEmbedder::HttpTokenEmbedder(corpus::ServiceConfig config) : config_(std::move(config)) {
    http::parse_url(config_.endpoint);
}

std::vector<TokenEmbedding> HttpTokenEmbedder::embed(const std::vector<std::string>& texts, Language lang) {
    http::Headers headers;
    if (const auto key = http::api_key_from_env(config_.key_env); !key.empty())
        headers.emplace_back("Authorization", "Bearer " + key);
    std::vector<TokenEmbedding> out;
    out.reserve(texts.size());
    const std::size_t batch = std::max<std::size_t>(1, config_.batch_size);
    for (std::size_t b = 0; b < texts.size(); b += batch) {
        const std::size_t e = std::min(texts.size(), b + batch);
        const nlohmann::json body = {
            {"texts", std::vector<std::string>(texts.begin() + static_cast<std::ptrdiff_t>(b),
                                               texts.begin() + static_cast<std::ptrdiff_t>(e))},
            {"lang", to_string(lang)}};
        const auto response = http::post_json_with_retries<EmbeddingBackendError>(
            config_.endpoint, body, headers, config_.timeout, config_.retry, b);
        try {
            const auto& tokens = response.at("tokens");
            const auto& vectors = response.at("vectors");
            if (tokens.size() != e - b || vectors.size() != e - b)
                throw std::invalid_argument("expected one entry per text");
            for (std::size_t i = 0; i < e - b; ++i) out.push_back(from_json(tokens[i], vectors[i]));
        } catch (const std::exception& ex) {
            throw EmbeddingBackendError(config_.endpoint + ": malformed token embedding response: " +
                                        ex.what());
        }
    }
    return out;
}

FileTokenEmbedder::FileTokenEmbedder(const std::string& path) : path_(path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read token embedding table " + path);
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (utf8::trim(line).empty()) continue;
        try {
            const auto j = nlohmann::json::parse(line);
            table_.insert_or_assign(table_key(j.value("lang", ""), j.at("text").get<std::string>()),
                                    from_json(j.at("tokens"), j.at("vectors")));
        } catch (const std::exception& e) {
            throw FormatError(row, std::string("token embedding table: ") + e.what());
        }
    }
}

std::vector<TokenEmbedding> FileTokenEmbedder::embed(const std::vector<std::string>& texts, Language lang) {
    std::vector<TokenEmbedding> out;
    out.reserve(texts.size());
    for (const auto& text : texts) {
        auto it = table_.find(table_key(to_string(lang), text));
        if (it == table_.end()) it = table_.find(table_key("", text));
        if (it == table_.end())
            throw EmbeddingBackendError(name() + ": no token vectors for text \"" + text + "\"");
        out.push_back(it->second);
    }
    return out;
}

std::vector<TokenEmbedding> MockTokenEmbedder::embed(const std::vector<std::string>& texts, Language lang) {
    std::vector<TokenEmbedding> out;
    out.reserve(texts.size());
    for (const auto& text : texts) {
        TokenEmbedding e;
        e.tokens = tokenize_for_metrics(text, lang);
        e.vectors.resize(static_cast<Eigen::Index>(e.tokens.size()), dimension_);
        for (std::size_t i = 0; i < e.tokens.size(); ++i) {
            std::uint64_t state = fnv1a64(e.tokens[i]);
            for (int j = 0; j < dimension_; ++j) {
                state = splitmix64(state);
                // Uniform in [-1, 1).
                e.vectors(static_cast<Eigen::Index>(i), j) =
                    static_cast<double>(state >> 11) * 0x1.0p-52 - 1.0;
            }
        }
        out.push_back(std::move(e));
    }
    return out;
}

std::unique_ptr<TokenEmbedder> make_token_embedder(const corpus::ServiceConfig& config) {
    const auto& ep = config.endpoint;
    if (ep == "mock:" || ep == "mock:hash") return std::make_unique<MockTokenEmbedder>();
    if (ep.rfind("file:", 0) == 0) return std::make_unique<FileTokenEmbedder>(ep.substr(5));
    if (ep.rfind("mock:", 0) == 0) throw ConfigError("unknown mock token embedder '" + ep + "'");
    return std::make_unique<HttpTokenEmbedder>(config);
}

}  // namespace clts::metrics
