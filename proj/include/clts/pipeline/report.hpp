#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "clts/features/feature_table.hpp"
#include "clts/metrics/scoring.hpp"
#include "clts/stats/compare.hpp"
#include "clts/stats/iaa.hpp"
#include "clts/stats/ratings.hpp"

namespace clts::pipeline {

/// Marks the maximum of every column; ties are all marked and NaN cells
/// are never marked.
std::vector<std::vector<bool>> best_per_column(const std::vector<std::vector<double>>& table);

struct ReportInputs {
    std::vector<metrics::MetricAggregate> metrics;
    std::vector<features::FeatureRecord> features;
    std::vector<stats::Comparison> significance;
    std::optional<std::vector<stats::HumanMeans>> human_means;
    std::optional<std::vector<stats::KappaSimResult>> agreement;
    /// corpus id -> "EN to FR" style direction label
    std::map<std::string, std::string> directions;
};

/// Automatic-metric table for one corpus: one row per strategy, a
/// BLEU/SARI/semantic block per model, best value per column in bold.
std::string render_metric_table(const std::string& corpus_id,
                                const std::vector<metrics::MetricAggregate>& aggregates);

/// Writes report.md plus CSV tables into `dir` and returns the file names
/// written, in a fixed order. Output depends only on `inputs`.
std::vector<std::string> write_report(const std::filesystem::path& dir, const ReportInputs& inputs);

}  // namespace clts::pipeline
