#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "clts/common/language.hpp"

namespace clts::corpus {

enum class Split { train, test };

std::string to_string(Split split);
Split parse_split(const std::string& text);

/// Original-language texts kept when a monolingual pair is machine
/// translated, so reports can tell translated references from native ones.
struct Provenance {
    Language original_lang = Language::en;
    std::string original_source;
    std::vector<std::string> original_references;
    /// The complex source rendered in the target language; used as the
    /// same-language source side for SARI.
    std::string translated_source;
    std::string translator;

    bool operator==(const Provenance&) const = default;
};

/// One complex source sentence with its reference simplifications.
struct SentencePair {
    std::string id;
    std::string source;
    std::vector<std::string> references;
    Language source_lang = Language::en;
    Language target_lang = Language::fr;
    std::string corpus_id;
    Split split = Split::test;
    /// Set for pairs from monolingual corpora awaiting translation; such pairs
    /// have source_lang == target_lang.
    bool monolingual_origin = false;
    std::optional<Provenance> provenance;

    bool operator==(const SentencePair&) const = default;
};

/// Returns an empty string for a valid pair, else the first violated rule.
std::string validation_error(const SentencePair& pair);

nlohmann::json to_json(const SentencePair& pair);
/// Throws std::invalid_argument describing the first problem.
SentencePair pair_from_json(const nlohmann::json& j);

}  // namespace clts::corpus
