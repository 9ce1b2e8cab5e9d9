#pragma once

#include <array>
#include <string_view>

namespace clts::features {

/// Linguistic feature values for one document.
struct FeatureVector {
    // lexical
    double lexical_richness = 0;
    double infrequent_words_ratio = 0;
    double long_words_ratio = 0;
    double content_words_ratio = 0;
    double avg_word_length = 0;
    // syntactic / structural
    double words_before_main_verb = 0;
    double noun_phrases_ratio = 0;
    double relative_clauses_ratio = 0;
    double appositions_ratio = 0;
    double conditional_clauses_ratio = 0;
    double conjunctions_ratio = 0;
    double passive_voice_ratio = 0;
    double syntactic_tree_depth = 0;
    double sentences_number = 0;
    double words_per_sentence = 0;
    double short_sentences_ratio = 0;
    // readability
    double flesch_reading_ease = 0;
    double flesch_kincaid_grade = 0;
    double syllables_ratio = 0;
    // named entities
    double max_same_entity_distance = 0;
    double unique_entities = 0;
    double unique_entities_average = 0;
    double avg_same_entity_distance = 0;
    double entity_to_token_ratio = 0;
    double unique_to_total_entities = 0;
    double consecutive_entity_distance = 0;
    // grammatical
    double modifiers_ratio = 0;
    double negations_ratio = 0;
    double past_perfect_verbs = 0;
    double past_tense_verbs = 0;
    double punctuation_ratio = 0;
    double third_person_pronouns_ratio = 0;

    bool operator==(const FeatureVector&) const = default;
};

enum class FeatureKind {
    proportion,  // a share of some population, always in [0, 1]
    count,       // non-negative count or per-sentence rate
    real         // unbounded (readability scores)
};

struct FeatureField {
    std::string_view name;
    double FeatureVector::*member;
    FeatureKind kind;
};

/// Every field, in report column order.
inline constexpr std::array<FeatureField, 32> kFeatureFields = {{
    {"lexical_richness", &FeatureVector::lexical_richness, FeatureKind::proportion},
    {"infrequent_words_ratio", &FeatureVector::infrequent_words_ratio, FeatureKind::proportion},
    {"long_words_ratio", &FeatureVector::long_words_ratio, FeatureKind::proportion},
    {"content_words_ratio", &FeatureVector::content_words_ratio, FeatureKind::proportion},
    {"avg_word_length", &FeatureVector::avg_word_length, FeatureKind::count},
    {"words_before_main_verb", &FeatureVector::words_before_main_verb, FeatureKind::count},
    {"noun_phrases_ratio", &FeatureVector::noun_phrases_ratio, FeatureKind::proportion},
    {"relative_clauses_ratio", &FeatureVector::relative_clauses_ratio, FeatureKind::proportion},
    {"appositions_ratio", &FeatureVector::appositions_ratio, FeatureKind::proportion},
    {"conditional_clauses_ratio", &FeatureVector::conditional_clauses_ratio, FeatureKind::proportion},
    {"conjunctions_ratio", &FeatureVector::conjunctions_ratio, FeatureKind::proportion},
    {"passive_voice_ratio", &FeatureVector::passive_voice_ratio, FeatureKind::proportion},
    {"syntactic_tree_depth", &FeatureVector::syntactic_tree_depth, FeatureKind::count},
    {"sentences_number", &FeatureVector::sentences_number, FeatureKind::count},
    {"words_per_sentence", &FeatureVector::words_per_sentence, FeatureKind::count},
    {"short_sentences_ratio", &FeatureVector::short_sentences_ratio, FeatureKind::proportion},
    {"flesch_reading_ease", &FeatureVector::flesch_reading_ease, FeatureKind::real},
    {"flesch_kincaid_grade", &FeatureVector::flesch_kincaid_grade, FeatureKind::real},
    // syllables per word: >= 1 whenever the document has a word
    {"syllables_ratio", &FeatureVector::syllables_ratio, FeatureKind::count},
    {"max_same_entity_distance", &FeatureVector::max_same_entity_distance, FeatureKind::count},
    {"unique_entities", &FeatureVector::unique_entities, FeatureKind::count},
    {"unique_entities_average", &FeatureVector::unique_entities_average, FeatureKind::count},
    {"avg_same_entity_distance", &FeatureVector::avg_same_entity_distance, FeatureKind::count},
    {"entity_to_token_ratio", &FeatureVector::entity_to_token_ratio, FeatureKind::proportion},
    {"unique_to_total_entities", &FeatureVector::unique_to_total_entities, FeatureKind::proportion},
    {"consecutive_entity_distance", &FeatureVector::consecutive_entity_distance, FeatureKind::count},
    {"modifiers_ratio", &FeatureVector::modifiers_ratio, FeatureKind::proportion},
    {"negations_ratio", &FeatureVector::negations_ratio, FeatureKind::proportion},
    {"past_perfect_verbs", &FeatureVector::past_perfect_verbs, FeatureKind::count},
    {"past_tense_verbs", &FeatureVector::past_tense_verbs, FeatureKind::count},
    {"punctuation_ratio", &FeatureVector::punctuation_ratio, FeatureKind::proportion},
    {"third_person_pronouns_ratio", &FeatureVector::third_person_pronouns_ratio, FeatureKind::proportion},
}};

}  // namespace clts::features
