#pragma once

#include <string>
#include <string_view>

#include "clts/common/error.hpp"

namespace clts {

enum class Language { en, fr };

inline Language parse_language(std::string_view code) {
    if (code == "en") return Language::en;
    if (code == "fr") return Language::fr;
    throw UnsupportedLanguage("unsupported language code '" + std::string(code) +
                              "' (expected en or fr)");
}

inline std::string to_string(Language lang) { return lang == Language::en ? "en" : "fr"; }

/// English name used inside prompt templates.
inline std::string language_name(Language lang) {
    return lang == Language::en ? "English" : "French";
}

inline Language other_language(Language lang) {
    return lang == Language::en ? Language::fr : Language::en;
}

}  // namespace clts
