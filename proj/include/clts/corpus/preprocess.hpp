#pragma once

#include <string>
#include <vector>

#include "clts/corpus/sentence_pair.hpp"
#include "clts/corpus/services.hpp"

namespace clts::corpus {

struct TranslationFailure {
    std::string pair_id;
    std::string reason;
};

struct AugmentResult {
    std::vector<SentencePair> pairs;  // input order, failed pairs excluded
    std::vector<TranslationFailure> failures;
};

/// Turns monolingual pairs into cross-lingual ones: the references are
/// translated into the other language and the source is translated too (kept
/// as provenance.translated_source). The original texts are retained in
/// provenance. Pairs that are already cross-lingual pass through unchanged.
/// A pair whose translation fails is listed in `failures`, never silently
/// dropped.
AugmentResult augment_with_translation(const std::vector<SentencePair>& pairs, Translator& translator,
                                       std::size_t parallelism = 4);

/// Keep/drop record for one pair. kept <=> score >= threshold.
struct SimilarityDecision {
    std::string pair_id;
    double score = 0.0;
    bool kept = false;
    double threshold = 0.0;
};

struct FilterResult {
    std::vector<SentencePair> kept;
    std::vector<SentencePair> filtered;
    std::vector<SimilarityDecision> decisions;  // one per input pair, input order
};

inline constexpr double kDefaultSimilarityThreshold = 0.6;

/// Cosine similarity between the source embedding and each reference
/// embedding; a pair's score is the maximum over its references, and pairs
/// scoring at or above `threshold` are kept.
///
/// Throws EmbeddingBackendError, DimensionMismatch, ZeroNormVector, or
/// InvalidArgument for a NaN threshold.
FilterResult filter_by_similarity(const std::vector<SentencePair>& pairs, Embedder& embedder,
                                  double threshold = kDefaultSimilarityThreshold);

nlohmann::json to_json(const SimilarityDecision& d);

}  // namespace clts::corpus
