#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "clts/common/language.hpp"

namespace clts::features {

/// Liang hyphenation patterns, as used by TeX.
///
/// Accepts both TeX sources (`\patterns{...}` and `\hyphenation{...}`
/// groups, `%` comments) and the hunspell/LibreOffice `.dic` layout (first
/// line names the encoding, keyword lines such as LEFTHYPHENMIN are
/// skipped). Files must be UTF-8.
class HyphenationPatterns {
public:
    HyphenationPatterns() = default;
    /// Throws MissingPatternFile or SyntaxError.
    static HyphenationPatterns load(const std::filesystem::path& path);
    static HyphenationPatterns parse(std::string_view text, bool tex_syntax);

    void add_pattern(std::string_view pattern);
    /// Exception entry such as "ta-ble".
    void add_exception(std::string_view hyphenated);

    /// Break positions inside `word` (lowercase letters): p means a break
    /// between the p-th and (p+1)-th letter. Positions closer than
    /// `left_min` to the start or `right_min` to the end are suppressed.
    std::vector<int> break_points(std::u32string_view word, int left_min, int right_min) const;

    std::size_t pattern_count() const noexcept { return patterns_.size(); }

private:
    std::unordered_map<std::u32string, std::vector<unsigned char>> patterns_;
    std::unordered_map<std::u32string, std::vector<int>> exceptions_;
    std::size_t max_pattern_length_ = 0;
};

/// Syllable estimate: hyphenation break points plus one. Breaks are allowed
/// one letter from the start and two from the end, which catches short
/// initial syllables while avoiding the stray breaks patterns produce before
/// a final consonant.
inline constexpr int kSyllableLeftMin = 1;
inline constexpr int kSyllableRightMin = 2;

/// Letters of `word` are lowercased and everything else stripped first.
/// Throws InvalidArgument when no letters remain. Result is >= 1.
int syllable_count(std::string_view word, const HyphenationPatterns& patterns);

}  // namespace clts::features
