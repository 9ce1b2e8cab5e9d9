#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "clts/common/language.hpp"
#include "clts/corpus/corpus_io.hpp"
#include "clts/corpus/services.hpp"
#include "clts/features/extract.hpp"
#include "clts/prompting/backend.hpp"
#include "clts/prompting/runner.hpp"
#include "clts/prompting/strategy.hpp"

namespace clts::pipeline {

struct CorpusSpec {
    std::string id;
    std::filesystem::path path;
    corpus::CorpusFormat format = corpus::CorpusFormat::jsonl;
    Language source_lang = Language::en;
    Language target_lang = Language::fr;
    /// Monolingual corpora are machine translated during preprocessing.
    bool monolingual = false;
    /// CoNLL-U annotations of this corpus's system outputs.
    std::vector<std::filesystem::path> annotations;
};

struct Thresholds {
    double similarity = 0.6;
    /// Filter translated pairs (true) or the monolingual originals (false).
    bool filter_after_translation = true;
    features::FeatureConfig features;
};

inline corpus::ServiceConfig service_at(std::string endpoint) {
    corpus::ServiceConfig config;
    config.endpoint = std::move(endpoint);
    return config;
}

struct Services {
    corpus::ServiceConfig translator = service_at("mock:identity");
    corpus::ServiceConfig embedder = service_at("mock:constant");
    corpus::ServiceConfig token_embedder_en = service_at("mock:hash");
    corpus::ServiceConfig token_embedder_fr = service_at("mock:hash");
};

struct LanguageResourceSpec {
    std::filesystem::path patterns;     // empty: bundled dictionary
    std::filesystem::path frequencies;  // required for feature extraction
};

struct IaaSpec {
    std::optional<std::filesystem::path> ratings;
    int n_repeats = 1000;
};

/// Everything a run needs. Relative paths are resolved against the config
/// file's directory. API keys are never stored here, only the names of the
/// environment variables holding them.
struct RunConfig {
    std::vector<CorpusSpec> corpora;
    std::vector<prompting::BackendConfig> backends;
    std::vector<prompting::Strategy> strategies;
    Thresholds thresholds;
    prompting::GenerationConfig generation;
    Services services;
    LanguageResourceSpec resources_en;
    LanguageResourceSpec resources_fr;
    IaaSpec iaa;
    std::uint64_t seed = 0;
    std::size_t workers = 4;
    std::filesystem::path output_dir = "run";
    /// SHA-256 of the config file bytes.
    std::string hash;

    /// Throws ConfigError.
    void validate() const;
    const LanguageResourceSpec& resources(Language lang) const {
        return lang == Language::en ? resources_en : resources_fr;
    }
};

/// Parses a TOML config. Throws ConfigError naming the offending key.
RunConfig load_config(const std::filesystem::path& path);
RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir);

}  // namespace clts::pipeline
