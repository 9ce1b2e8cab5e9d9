#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "clts/corpus/sentence_pair.hpp"
#include "clts/metrics/token_embedder.hpp"
#include "clts/prompting/output.hpp"

namespace clts::metrics {

/// Per-item scores. A missing semantic score carries a reason code.
struct MetricRecord {
    std::string pair_id;
    std::string corpus_id;
    std::string strategy;
    std::string model_id;
    double bleu = 0;  // sentence-level, add-one smoothed
    double sari = 0;
    std::optional<double> semantic;
    std::string semantic_reason;  // set when semantic is empty
    /// "translated_source" or "original_source": which text served as the
    /// SARI source side.
    std::string sari_source;

    bool operator==(const MetricRecord&) const = default;
};

struct MetricAggregate {
    std::string corpus_id;
    std::string model_id;
    std::string strategy;
    std::size_t n_items = 0;
    double bleu = 0;                     // corpus-level BLEU-4
    double sari = 0;                     // mean sentence SARI
    std::optional<double> semantic_f1;   // mean over items that have one
};

struct ScoreResult {
    std::vector<MetricRecord> records;        // in output order
    std::vector<MetricAggregate> aggregates;  // sorted by corpus, model, strategy order
};

/// Token embedders keyed by the language of the texts they embed.
using EmbedderByLanguage = std::map<Language, TokenEmbedder*>;

/// Scores every output against its pair's references. Throws MissingPair
/// when an output names an unknown pair.
ScoreResult score_outputs(std::span<const prompting::SystemOutput> outputs,
                          std::span<const corpus::SentencePair> pairs,
                          const EmbedderByLanguage& embedders);

nlohmann::json to_json(const MetricRecord& r);
MetricRecord metric_record_from_json(const nlohmann::json& j);
/// Throws IoError or FormatError.
std::vector<MetricRecord> load_metric_records(const std::filesystem::path& path);

/// Columns: corpus, model, strategy, n_items, bleu, sari, semantic_f1.
void write_metric_csv(std::ostream& out, std::span<const MetricAggregate> aggregates);
std::vector<MetricAggregate> read_metric_csv(std::istream& in);

}  // namespace clts::metrics
