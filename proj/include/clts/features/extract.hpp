#pragma once

#include <string>
#include <vector>

#include "clts/features/conllu.hpp"
#include "clts/features/feature_vector.hpp"
#include "clts/features/resources.hpp"

namespace clts::features {

/// Thresholds with no canonical value; all configurable.
struct FeatureConfig {
    long infrequent_top_k = 5000;      // words ranked beyond this are infrequent
    int long_word_min_letters = 7;
    int short_sentence_max_words = 10;
};

/// A word is a token whose form contains at least one letter.
bool is_word(const AnnotatedToken& token);

/// Longest root-to-leaf path counted in nodes: a root-only sentence has
/// depth 1, a chain of n tokens depth n. Throws CycleError / MultiRootError.
int tree_depth(const Sentence& sentence);

struct ReadabilityInputs {
    double words_per_sentence = 0;   // ASL
    double syllables_per_word = 0;   // ASW
};

/// English: 206.835 - 1.015 ASL - 84.6 ASW.
/// French (Kandel & Moles): 207 - 1.015 ASL - 73.6 ASW.
double flesch_reading_ease(Language lang, const ReadabilityInputs& in);
/// 0.39 ASL + 11.8 ASW - 15.59, for both languages.
double flesch_kincaid_grade(const ReadabilityInputs& in);

/// Throws EmptyDocument when the document has no words.
ReadabilityInputs readability_inputs(const AnnotatedDocument& doc, const HyphenationPatterns& patterns);
double flesch_reading_ease(const AnnotatedDocument& doc, const HyphenationPatterns& patterns);
double flesch_kincaid_grade(const AnnotatedDocument& doc, const HyphenationPatterns& patterns);

struct EntityFeatures {
    double max_same_entity_distance = 0;
    double unique_entities = 0;
    double unique_entities_average = 0;
    double avg_same_entity_distance = 0;
    double entity_to_token_ratio = 0;
    double unique_to_total_entities = 0;
    double consecutive_entity_distance = 0;
    /// I- tags with no open entity of the same type, promoted to B-.
    std::size_t repaired_tags = 0;
};

/// Entity mentions are BIO spans within a sentence; identity is the
/// case-folded surface string. Distances are gaps between mention start
/// positions, counted over the document's tokens. Documents with fewer than
/// two mentions get 0 for every distance.
EntityFeatures entity_distance_features(const AnnotatedDocument& doc);

/// Computes every feature for one document. Throws MissingResource when
/// resources for doc.lang are absent and EmptyDocument for a document
/// without tokens.
FeatureVector extract_features(const AnnotatedDocument& doc, const ResourceSet& resources,
                               const FeatureConfig& config = {});

}  // namespace clts::features
