#pragma once

#include <string>
#include <string_view>
#include <vector>

// Minimal UTF-8 handling for English and French text: Latin script letters
// (ASCII, Latin-1 Supplement, Latin Extended-A/B) are recognised as letters;
// everything else is treated as a non-letter.
namespace clts::utf8 {

/// Decodes `text` into code points. Invalid bytes decode to U+FFFD.
std::vector<char32_t> decode(std::string_view text);

void append(std::string& out, char32_t cp);
std::string encode(const std::vector<char32_t>& cps);

bool is_letter(char32_t cp) noexcept;
bool is_digit(char32_t cp) noexcept;
bool is_space(char32_t cp) noexcept;
char32_t to_lower(char32_t cp) noexcept;

std::string to_lower(std::string_view text);
bool contains_letter(std::string_view text);
std::size_t letter_count(std::string_view text);
std::size_t length(std::string_view text);

/// Keeps letters only, lowercased.
std::string letters_lower(std::string_view text);

std::string trim(std::string_view text);

}  // namespace clts::utf8
