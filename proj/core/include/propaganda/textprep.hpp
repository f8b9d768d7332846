#pragma once

#include <set>
#include <string>
#include <string_view>

namespace propaganda {

// Entity tags emitted by the mapping stages, plus the URL placeholder.
inline constexpr std::string_view kTagNation = "NATION";
inline constexpr std::string_view kTagReligion = "RELIGION";
inline constexpr std::string_view kTagPolitics = "POLITICS";
inline constexpr std::string_view kTagSlogans = "SLOGANS";
inline constexpr std::string_view kTagPerson = "PERSON";
inline constexpr std::string_view kTagUrl = "URL";

std::set<std::u32string> default_protected_tags();

struct PreprocessConfig {
  bool remove_numbers = true;      // Nd
  bool remove_punctuation = true;  // Pc Pd Ps Pe Pi Pf Po
  bool remove_symbols = true;      // Sm Sc Sk So
  bool lowercase = true;
  bool replace_urls = true;
  std::set<std::u32string> protected_tags = default_protected_tags();
};

// Replaces every `scheme://...` or `www....` run (up to the next whitespace)
// with the literal token URL.
std::u32string replace_urls(std::u32string_view text);

// Fixed stage order: urls, numbers, punctuation, symbols, lowercase.
// Occurrences of a protected tag bounded by non-alphanumeric characters are
// left untouched. Deleted characters become spaces, whitespace runs collapse
// to one space and the result is trimmed.
std::u32string preprocess(std::u32string_view text, const PreprocessConfig& config = {});

}  // namespace propaganda
