#include "clts/features/hyphenation.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "clts/common/error.hpp"
#include "clts/common/utf8.hpp"

namespace clts::features {

void HyphenationPatterns::add_pattern(std::string_view pattern) {
    std::u32string letters;
    std::vector<unsigned char> values(1, 0);
    for (char32_t cp : utf8::decode(pattern)) {
        if (cp >= '0' && cp <= '9') {
            values.back() = static_cast<unsigned char>(cp - '0');
        } else {
            letters.push_back(cp == '.' ? cp : utf8::to_lower(cp));
            values.push_back(0);
        }
    }
    if (letters.empty()) return;
    max_pattern_length_ = std::max(max_pattern_length_, letters.size());
    auto& slot = patterns_[letters];
    if (slot.empty()) {
        slot = std::move(values);
    } else {
        for (std::size_t i = 0; i < slot.size(); ++i) slot[i] = std::max(slot[i], values[i]);
    }
}

void HyphenationPatterns::add_exception(std::string_view hyphenated) {
    std::u32string letters;
    std::vector<int> points;
    for (char32_t cp : utf8::decode(hyphenated)) {
        if (cp == '-') points.push_back(static_cast<int>(letters.size()));
        else letters.push_back(utf8::to_lower(cp));
    }
    if (!letters.empty()) exceptions_[letters] = std::move(points);
}

namespace {

bool is_keyword_line(std::string_view line) {
    // hunspell .dic directives are uppercase words: LEFTHYPHENMIN 2, NEXTLEVEL, ...
    if (line.empty() || !(line.front() >= 'A' && line.front() <= 'Z')) return false;
    return std::all_of(line.begin(), line.end(), [](char c) {
        return (c >= 'A' && c <= 'Z') || c == ' ' || (c >= '0' && c <= '9') || c == '_';
    });
}

}  // namespace

HyphenationPatterns HyphenationPatterns::parse(std::string_view text, bool tex_syntax) {
    HyphenationPatterns out;
    std::istringstream in{std::string(text)};
    std::string line;
    if (!tex_syntax) {
        std::getline(in, line);  // encoding declaration
        while (std::getline(in, line)) {
            const std::string t = utf8::trim(line);
            if (t.empty() || t.front() == '%' || t.front() == '#' || is_keyword_line(t)) continue;
            if (t.find('/') != std::string::npos) continue;  // non-standard hyphenation entries
            out.add_pattern(t);
        }
        return out;
    }

    enum class Group { none, patterns, exceptions } group = Group::none;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto pct = line.find('%'); pct != std::string::npos) line.erase(pct);
        std::istringstream words(line);
        std::string w;
        while (words >> w) {
            if (group == Group::none) {
                if (w.rfind("\\patterns{", 0) == 0) {
                    group = Group::patterns;
                    w = w.substr(10);
                } else if (w.rfind("\\hyphenation{", 0) == 0) {
                    group = Group::exceptions;
                    w = w.substr(13);
                } else {
                    continue;
                }
            }
            bool closes = false;
            if (const auto brace = w.find('}'); brace != std::string::npos) {
                w.erase(brace);
                closes = true;
            }
            if (!w.empty()) {
                if (w.front() == '\\')
                    throw SyntaxError(lineno, "unsupported TeX command '" + w + "' in pattern group");
                if (group == Group::patterns) out.add_pattern(w);
                else out.add_exception(w);
            }
            if (closes) group = Group::none;
        }
    }
    return out;
}

HyphenationPatterns HyphenationPatterns::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MissingPatternFile("hyphenation pattern file not found: " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    const bool tex = path.extension() == ".tex" || text.find("\\patterns{") != std::string::npos;
    auto patterns = parse(text, tex);
    if (patterns.pattern_count() == 0)
        throw MissingPatternFile("no hyphenation patterns in " + path.string());
    return patterns;
}

std::vector<int> HyphenationPatterns::break_points(std::u32string_view word, int left_min, int right_min) const {
    const int n = static_cast<int>(word.size());
    std::vector<int> out;
    auto allowed = [&](int p) { return p >= left_min && p <= n - right_min && p > 0 && p < n; };

    if (const auto ex = exceptions_.find(std::u32string(word)); ex != exceptions_.end()) {
        for (int p : ex->second)
            if (allowed(p)) out.push_back(p);
        return out;
    }

    std::u32string dotted;
    dotted.reserve(word.size() + 2);
    dotted.push_back('.');
    dotted.append(word);
    dotted.push_back('.');
    std::vector<unsigned char> points(dotted.size() + 1, 0);
    std::u32string key;
    for (std::size_t i = 0; i < dotted.size(); ++i) {
        const std::size_t max_len = std::min(max_pattern_length_, dotted.size() - i);
        for (std::size_t len = 1; len <= max_len; ++len) {
            key.assign(dotted, i, len);
            const auto it = patterns_.find(key);
            if (it == patterns_.end()) continue;
            const auto& values = it->second;
            for (std::size_t k = 0; k < values.size(); ++k)
                points[i + k] = std::max(points[i + k], values[k]);
        }
    }
    // points[i] sits before dotted[i]; word position p corresponds to i = p + 1.
    for (int p = 1; p < n; ++p)
        if ((points[static_cast<std::size_t>(p + 1)] % 2) == 1 && allowed(p)) out.push_back(p);
    return out;
}

int syllable_count(std::string_view word, const HyphenationPatterns& patterns) {
    const std::string letters = utf8::letters_lower(word);
    if (letters.empty()) throw InvalidArgument("syllable_count: '" + std::string(word) + "' has no letters");
    const auto cps = utf8::decode(letters);
    const std::u32string w(cps.begin(), cps.end());
    return 1 + static_cast<int>(patterns.break_points(w, kSyllableLeftMin, kSyllableRightMin).size());
}

}  // namespace clts::features
