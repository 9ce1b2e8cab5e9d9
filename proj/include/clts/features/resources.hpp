#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <unordered_map>

#include "clts/common/language.hpp"
#include "clts/features/hyphenation.hpp"

namespace clts::features {

/// Word frequency ranks: one `word<TAB>rank` per line, rank ascending.
class FrequencyList {
public:
    FrequencyList() = default;
    /// Throws MissingResource or FormatError.
    static FrequencyList load(const std::filesystem::path& path);
    void add(const std::string& word, long rank);

    /// Rank of the lowercased word, or 0 when absent.
    long rank(const std::string& word) const;
    bool in_top(const std::string& word, long k) const {
        const long r = rank(word);
        return r > 0 && r <= k;
    }
    std::size_t size() const noexcept { return ranks_.size(); }

private:
    std::unordered_map<std::string, long> ranks_;
};

/// Immutable per-language tables needed by extract_features.
struct LanguageResources {
    HyphenationPatterns patterns;
    FrequencyList frequencies;
};

struct ResourcePaths {
    std::filesystem::path patterns;
    std::filesystem::path frequencies;
};

/// Shared, read-only resource tables for every language in use.
class ResourceSet {
public:
    /// Throws MissingResource / MissingPatternFile.
    void load(Language lang, const ResourcePaths& paths);
    void insert(Language lang, LanguageResources resources);
    /// Throws MissingResource when the language was never loaded.
    const LanguageResources& at(Language lang) const;

private:
    std::map<Language, LanguageResources> by_lang_;
};

/// Bundled pattern file for a language, under `resource_dir`/hyphenation.
std::filesystem::path bundled_patterns(const std::filesystem::path& resource_dir, Language lang);

}  // namespace clts::features
