#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <string>

#include "clts/pipeline/config.hpp"
#include "clts/pipeline/manifest.hpp"
#include "clts/prompting/backend.hpp"

namespace clts::pipeline {

using BackendFactory =
    std::function<std::unique_ptr<prompting::GenerationBackend>(const prompting::BackendConfig&)>;

/// Per-invocation settings shared by every stage.
struct RunContext {
    std::filesystem::path run_dir;
    /// Reuse earlier work: generation continues from its outputs file and
    /// other stages are skipped when their recorded artifacts are intact.
    bool resume = false;
    std::uint64_t seed = 0;
    std::size_t workers = 4;
    BackendFactory backend_factory = prompting::make_backend;
    std::function<std::string()> clock;

    /// Context from a config: run_dir = output_dir, seed and workers copied.
    static RunContext from_config(const RunConfig& config);
};

inline constexpr const char* kStagePreprocess = "preprocess";
inline constexpr const char* kStageGenerate = "generate";
inline constexpr const char* kStageFeatures = "features";
inline constexpr const char* kStageMetrics = "metrics";
inline constexpr const char* kStageStats = "stats";
inline constexpr const char* kStageIaa = "iaa";
inline constexpr const char* kStageReport = "report";

/// Translation of monolingual corpora and similarity filtering. Writes
/// kept/filtered pairs and the decision log per corpus.
StageRecord cmd_preprocess(const RunConfig& config, const RunContext& ctx);
/// Every (pair, strategy, backend) output, resumable.
StageRecord cmd_generate(const RunConfig& config, const RunContext& ctx);
/// Feature vectors for the annotated outputs.
StageRecord cmd_features(const RunConfig& config, const RunContext& ctx);
/// BLEU, SARI and semantic scores per item and per (corpus, model, strategy).
StageRecord cmd_metrics(const RunConfig& config, const RunContext& ctx);
/// Pairwise strategy significance tests over metrics and features.
StageRecord cmd_stats(const RunConfig& config, const RunContext& ctx);
/// Agreement simulation and human-rating means.
StageRecord cmd_iaa(const RunConfig& config, const RunContext& ctx);
/// Markdown and CSV report bundle under <run_dir>/report.
StageRecord cmd_report(const RunConfig& config, const RunContext& ctx);

}  // namespace clts::pipeline
