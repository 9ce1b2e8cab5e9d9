#pragma once

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>

#include "clts/common/language.hpp"
#include "clts/corpus/services.hpp"

namespace clts::metrics {

/// A text's tokens with one embedding row per token.
struct TokenEmbedding {
    std::vector<std::string> tokens;
    Eigen::MatrixXd vectors;
};

/// Contextual token-embedding provider for the semantic score.
class TokenEmbedder {
public:
    virtual ~TokenEmbedder() = default;
    /// Throws EmbeddingBackendError.
    virtual std::vector<TokenEmbedding> embed(const std::vector<std::string>& texts, Language lang) = 0;
    virtual std::string name() const = 0;
};

/// POST {"texts": [...], "lang": "en"|"fr"}
///   -> {"tokens": [[str, ...], ...], "vectors": [[[real, ...], ...], ...]}.
class HttpTokenEmbedder final : public TokenEmbedder {
public:
    explicit HttpTokenEmbedder(corpus::ServiceConfig config);
    std::vector<TokenEmbedding> embed(const std::vector<std::string>& texts, Language lang) override;
    std::string name() const override { return config_.endpoint; }

private:
    corpus::ServiceConfig config_;
};

/// Precomputed JSONL: {"text": str, "lang": "en"|"fr" (optional),
/// "tokens": [...], "vectors": [[...], ...]} per line.
class FileTokenEmbedder final : public TokenEmbedder {
public:
    explicit FileTokenEmbedder(const std::string& path);
    std::vector<TokenEmbedding> embed(const std::vector<std::string>& texts, Language lang) override;
    std::string name() const override { return "file:" + path_; }

private:
    std::string path_;
    std::unordered_map<std::string, TokenEmbedding> table_;
};

/// Metric tokens with hashed vectors: equal tokens get equal vectors,
/// different tokens nearly orthogonal ones.
class MockTokenEmbedder final : public TokenEmbedder {
public:
    explicit MockTokenEmbedder(int dimension = 64) : dimension_(dimension) {}
    std::vector<TokenEmbedding> embed(const std::vector<std::string>& texts, Language lang) override;
    std::string name() const override { return "mock:hash"; }

private:
    int dimension_;
};

/// "mock:" / "mock:hash", "file:<path>" or an http(s) URL. Throws ConfigError.
std::unique_ptr<TokenEmbedder> make_token_embedder(const corpus::ServiceConfig& config);

}  // namespace clts::metrics
