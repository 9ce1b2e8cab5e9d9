#include "clts/metrics/tokenize.hpp"

#include "clts/common/utf8.hpp"

namespace clts::metrics {
namespace {

bool is_word_char(char32_t cp) { return utf8::is_letter(cp) || utf8::is_digit(cp); }
bool is_apostrophe(char32_t cp) { return cp == U'\'' || cp == 0x2019; }

}  // namespace

Tokens tokenize_for_metrics(std::string_view text, Language lang) {
    const std::vector<char32_t> cps = utf8::decode(text);
    Tokens tokens;
    std::string word;
    auto flush = [&] {
        if (!word.empty()) tokens.push_back(std::move(word));
        word.clear();
    };

    for (std::size_t i = 0; i < cps.size(); ++i) {
        const char32_t cp = utf8::to_lower(cps[i]);
        const char32_t next = i + 1 < cps.size() ? cps[i + 1] : 0;
        if (utf8::is_space(cp)) {
            flush();
        } else if (is_word_char(cp)) {
            utf8::append(word, cp);
        } else if (is_apostrophe(cp) && !word.empty() && utf8::is_letter(next)) {
            word.push_back('\'');
            if (lang == Language::fr) flush();
        } else if ((cp == U'.' || cp == U',') && !word.empty() &&
                   utf8::is_digit(cps[i - 1]) && utf8::is_digit(next)) {
            utf8::append(word, cp);
        } else {
            flush();
            std::string punct;
            utf8::append(punct, is_apostrophe(cp) ? U'\'' : cp);
            tokens.push_back(std::move(punct));
        }
    }
    flush();
    return tokens;
}

}  // namespace clts::metrics
