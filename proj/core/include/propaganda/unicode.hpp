#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace propaganda::unicode {

// Decodes UTF-8 into code points. Throws EncodingError on malformed input
// (overlongs, surrogates, truncated sequences, values above U+10FFFF).
std::u32string from_utf8(std::string_view bytes);
std::string to_utf8(std::u32string_view text);
void append_utf8(std::string& out, char32_t cp);

bool is_letter(char32_t cp);      // L*
bool is_digit(char32_t cp);       // Nd
bool is_number(char32_t cp);      // N*
bool is_mark(char32_t cp);        // M*
bool is_punctuation(char32_t cp); // P*
bool is_symbol(char32_t cp);      // S*
bool is_space(char32_t cp);       // Z*, and tab/newline style controls
bool is_control(char32_t cp);     // Cc/Cf that is not whitespace
bool is_upper(char32_t cp);
bool is_lower(char32_t cp);
bool is_alnum(char32_t cp);       // L* or N*

char32_t to_lower(char32_t cp);
std::u32string to_lower(std::u32string_view text);

// Lowercase, canonical decomposition, then drop combining marks.
std::u32string lower_strip_accents(std::u32string_view text);

}  // namespace propaganda::unicode
