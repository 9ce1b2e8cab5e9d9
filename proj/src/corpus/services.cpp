#include "clts/corpus/services.hpp"

#include <algorithm>
#include <fstream>

#include "clts/common/error.hpp"
#include "clts/common/hash.hpp"
#include "clts/common/http.hpp"
#include "clts/common/parallel.hpp"
#include "clts/common/utf8.hpp"

namespace clts::corpus {
namespace {

http::Headers auth_headers(const ServiceConfig& config) {
    http::Headers headers;
    if (const auto key = http::api_key_from_env(config.key_env); !key.empty())
        headers.emplace_back("Authorization", "Bearer " + key);
    return headers;
}

// Splits [0, n) into batches and runs them concurrently; results land in
// input order.
template <typename Result, typename BatchFn>
std::vector<Result> batched(std::size_t n, const ServiceConfig& config, BatchFn fn) {
    const std::size_t batch = std::max<std::size_t>(1, config.batch_size);
    const std::size_t batches = (n + batch - 1) / batch;
    std::vector<Result> out(n);
    parallel_for(batches, config.parallelism, [&](std::size_t b) {
        const std::size_t begin = b * batch;
        const std::size_t end = std::min(n, begin + batch);
        auto part = fn(begin, end);
        for (std::size_t i = begin; i < end; ++i) out[i] = std::move(part[i - begin]);
    });
    return out;
}

std::vector<std::string> word_tokens(const std::string& text) {
    std::vector<std::string> words;
    std::string cur;
    for (char32_t cp : utf8::decode(text)) {
        if (utf8::is_letter(cp) || utf8::is_digit(cp)) {
            utf8::append(cur, utf8::to_lower(cp));
        } else if (!cur.empty()) {
            words.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) words.push_back(std::move(cur));
    return words;
}

}  // namespace

HttpEmbedder::HttpEmbedder(ServiceConfig config) : config_(std::move(config)) {
    http::parse_url(config_.endpoint);
}

std::vector<Eigen::VectorXd> HttpEmbedder::embed(const std::vector<std::string>& texts) {
    const auto headers = auth_headers(config_);
    auto vectors = batched<Eigen::VectorXd>(texts.size(), config_, [&](std::size_t b, std::size_t e) {
        nlohmann::json body = {{"texts", std::vector<std::string>(texts.begin() + b, texts.begin() + e)}};
        const auto response = http::post_json_with_retries<EmbeddingBackendError>(
            config_.endpoint, body, headers, config_.timeout, config_.retry, b);
        if (!response.contains("vectors") || !response["vectors"].is_array() ||
            response["vectors"].size() != e - b)
            throw EmbeddingBackendError(config_.endpoint + ": response lacks one vector per text");
        std::vector<Eigen::VectorXd> part;
        for (const auto& v : response["vectors"]) {
            const auto values = v.get<std::vector<double>>();
            part.push_back(Eigen::Map<const Eigen::VectorXd>(values.data(),
                                                             static_cast<Eigen::Index>(values.size())));
        }
        return part;
    });
    return vectors;
}

HttpTranslator::HttpTranslator(ServiceConfig config) : config_(std::move(config)) {
    http::parse_url(config_.endpoint);
}

std::vector<std::string> HttpTranslator::translate(const std::vector<std::string>& texts, Language from,
                                                   Language to) {
    const auto headers = auth_headers(config_);
    return batched<std::string>(texts.size(), config_, [&](std::size_t b, std::size_t e) {
        nlohmann::json body = {
            {"texts", std::vector<std::string>(texts.begin() + b, texts.begin() + e)},
            {"source_lang", to_string(from)},
            {"target_lang", to_string(to)},
        };
        const auto response = http::post_json_with_retries<TranslationBackendError>(
            config_.endpoint, body, headers, config_.timeout, config_.retry, b);
        if (!response.contains("translations") || !response["translations"].is_array() ||
            response["translations"].size() != e - b)
            throw TranslationBackendError(config_.endpoint +
                                          ": response lacks one translation per text");
        return response["translations"].get<std::vector<std::string>>();
    });
}

std::vector<Eigen::VectorXd> MockEmbedder::embed(const std::vector<std::string>& texts) {
    std::vector<Eigen::VectorXd> out;
    out.reserve(texts.size());
    for (const auto& text : texts) {
        Eigen::VectorXd v = Eigen::VectorXd::Zero(dimension_ + 1);
        if (kind_ == Kind::constant) {
            v.setOnes();
        } else {
            // The extra slot keeps texts without words away from zero norm.
            v[dimension_] = 0.01;
            for (const auto& w : word_tokens(text)) {
                const std::uint64_t h = fnv1a64(w);
                const auto slot = static_cast<Eigen::Index>(h % static_cast<std::uint64_t>(dimension_));
                v[slot] += ((h >> 63) ? -1.0 : 1.0);
            }
        }
        out.push_back(std::move(v));
    }
    return out;
}

std::string MockEmbedder::name() const {
    return kind_ == Kind::constant ? "mock:constant" : "mock:hash";
}

FileEmbedder::FileEmbedder(const std::string& path) : path_(path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read embedding table " + path);
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (utf8::trim(line).empty()) continue;
        try {
            const auto j = nlohmann::json::parse(line);
            const auto values = j.at("vector").get<std::vector<double>>();
            table_.insert_or_assign(j.at("text").get<std::string>(),
                                Eigen::Map<const Eigen::VectorXd>(values.data(),
                                                                  static_cast<Eigen::Index>(values.size())));
        } catch (const nlohmann::json::exception& e) {
            throw FormatError(row, std::string("embedding table: ") + e.what());
        }
    }
}

std::vector<Eigen::VectorXd> FileEmbedder::embed(const std::vector<std::string>& texts) {
    std::vector<Eigen::VectorXd> out;
    out.reserve(texts.size());
    for (const auto& text : texts) {
        const auto it = table_.find(text);
        if (it == table_.end())
            throw EmbeddingBackendError(name() + ": no vector for text \"" + text + "\"");
        out.push_back(it->second);
    }
    return out;
}

std::vector<std::string> MockTranslator::translate(const std::vector<std::string>& texts, Language,
                                                   Language) {
    if (kind_ == Kind::identity) return texts;
    std::vector<std::string> out;
    out.reserve(texts.size());
    for (const auto& t : texts) {
        std::string up;
        for (char32_t cp : utf8::decode(t)) {
            if (cp >= 'a' && cp <= 'z') cp -= 32;
            else if (cp >= 0xE0 && cp <= 0xFE && cp != 0xF7) cp -= 32;
            utf8::append(up, cp);
        }
        out.push_back(std::move(up));
    }
    return out;
}

std::string MockTranslator::name() const {
    return kind_ == Kind::identity ? "mock:identity" : "mock:upper";
}

std::unique_ptr<Embedder> make_embedder(const ServiceConfig& config) {
    const auto& ep = config.endpoint;
    if (ep == "mock:constant") return std::make_unique<MockEmbedder>(MockEmbedder::Kind::constant);
    if (ep == "mock:hash" || ep == "mock:") return std::make_unique<MockEmbedder>(MockEmbedder::Kind::hash);
    if (ep.rfind("file:", 0) == 0) return std::make_unique<FileEmbedder>(ep.substr(5));
    if (ep.rfind("mock:", 0) == 0) throw ConfigError("unknown mock embedder '" + ep + "'");
    return std::make_unique<HttpEmbedder>(config);
}

std::unique_ptr<Translator> make_translator(const ServiceConfig& config) {
    const auto& ep = config.endpoint;
    if (ep == "mock:identity" || ep == "mock:") return std::make_unique<MockTranslator>(MockTranslator::Kind::identity);
    if (ep == "mock:upper") return std::make_unique<MockTranslator>(MockTranslator::Kind::upper);
    if (ep.rfind("mock:", 0) == 0) throw ConfigError("unknown mock translator '" + ep + "'");
    return std::make_unique<HttpTranslator>(config);
}

}  // namespace clts::corpus
