#pragma once

#include <chrono>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>

#include "clts/common/language.hpp"
#include "clts/common/retry.hpp"

namespace clts::corpus {

/// Connection settings shared by the HTTP service clients.
struct ServiceConfig {
    /// "http(s)://..." for a remote service, "mock:<kind>" for the in-process
    /// stand-ins, "file:<path>" for precomputed data where supported.
    std::string endpoint;
    /// Name of the environment variable holding the bearer token.
    std::string key_env;
    std::chrono::seconds timeout{60};
    RetryPolicy retry{};
    std::size_t batch_size = 32;
    std::size_t parallelism = 4;
};

/// Sentence embedding provider: one fixed-dimension vector per input text.
class Embedder {
public:
    virtual ~Embedder() = default;
    /// Throws EmbeddingBackendError.
    virtual std::vector<Eigen::VectorXd> embed(const std::vector<std::string>& texts) = 0;
    virtual std::string name() const = 0;
};

/// Machine translation provider.
class Translator {
public:
    virtual ~Translator() = default;
    /// Throws TranslationBackendError.
    virtual std::vector<std::string> translate(const std::vector<std::string>& texts, Language from,
                                               Language to) = 0;
    virtual std::string name() const = 0;
};

/// POST {"texts": [...]} -> {"vectors": [[...], ...]}.
class HttpEmbedder final : public Embedder {
public:
    explicit HttpEmbedder(ServiceConfig config);
    std::vector<Eigen::VectorXd> embed(const std::vector<std::string>& texts) override;
    std::string name() const override { return config_.endpoint; }

private:
    ServiceConfig config_;
};

/// POST {"texts": [...], "source_lang": .., "target_lang": ..} -> {"translations": [...]}.
class HttpTranslator final : public Translator {
public:
    explicit HttpTranslator(ServiceConfig config);
    std::vector<std::string> translate(const std::vector<std::string>& texts, Language from,
                                       Language to) override;
    std::string name() const override { return config_.endpoint; }

private:
    ServiceConfig config_;
};

/// Deterministic embedders for offline runs.
///   constant - every text maps to the same vector (all cosines are 1)
///   hash     - signed feature hashing of lowercased word tokens
class MockEmbedder final : public Embedder {
public:
    enum class Kind { constant, hash };
    explicit MockEmbedder(Kind kind, int dimension = 256) : kind_(kind), dimension_(dimension) {}
    std::vector<Eigen::VectorXd> embed(const std::vector<std::string>& texts) override;
    std::string name() const override;

private:
    Kind kind_;
    int dimension_;
};

/// JSONL lookup table: {"text": str, "vector": [real, ...]} per line.
class FileEmbedder final : public Embedder {
public:
    explicit FileEmbedder(const std::string& path);
    std::vector<Eigen::VectorXd> embed(const std::vector<std::string>& texts) override;
    std::string name() const override { return "file:" + path_; }

private:
    std::string path_;
    std::unordered_map<std::string, Eigen::VectorXd> table_;
};

/// identity - returns its input; upper - uppercases (a visible, checkable edit).
class MockTranslator final : public Translator {
public:
    enum class Kind { identity, upper };
    explicit MockTranslator(Kind kind) : kind_(kind) {}
    std::vector<std::string> translate(const std::vector<std::string>& texts, Language from,
                                       Language to) override;
    std::string name() const override;

private:
    Kind kind_;
};

/// Builds a client from ServiceConfig::endpoint. Throws ConfigError.
std::unique_ptr<Embedder> make_embedder(const ServiceConfig& config);
std::unique_ptr<Translator> make_translator(const ServiceConfig& config);

}  // namespace clts::corpus
