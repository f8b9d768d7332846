#include "propaganda/textprep.hpp"

#include <vector>

#include "propaganda/unicode.hpp"

namespace propaganda {

namespace {

bool is_ascii_alpha(char32_t c) { return (c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z'); }

bool is_scheme_char(char32_t c) {
  return is_ascii_alpha(c) || (c >= U'0' && c <= U'9') || c == U'+' || c == U'.' || c == U'-';
}

// Start index of a URL beginning inside [begin, end), or `end` when none.
std::size_t find_url_start(std::u32string_view text, std::size_t begin, std::size_t end) {
  for (std::size_t i = begin; i < end; ++i) {
    const bool at_boundary = i == begin || !unicode::is_alnum(text[i - 1]);
    if (at_boundary && i + 4 <= end && (text[i] == U'w' || text[i] == U'W')) {
      auto head = unicode::to_lower(text.substr(i, 4));
      if (head == U"www.") return i;
    }
    if (text.substr(i, 3) == U"://" && i > begin) {
      // Walk back over the scheme: a letter followed by scheme characters.
      std::size_t s = i;
      while (s > begin && is_scheme_char(text[s - 1])) --s;
      while (s < i && !unicode::is_alnum(text[s])) ++s;
      bool has_alpha = false;
      for (std::size_t k = s; k < i; ++k) has_alpha = has_alpha || is_ascii_alpha(text[k]);
      if (has_alpha) return s;
    }
  }
  return end;
}

}  // namespace

std::set<std::u32string> default_protected_tags() {
  return {U"NATION", U"RELIGION", U"POLITICS", U"SLOGANS", U"PERSON", U"URL"};
}

std::u32string replace_urls(std::u32string_view text) {
  std::u32string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (unicode::is_space(text[i])) {
      out.push_back(text[i++]);
      continue;
    }
    std::size_t token_end = i;
    while (token_end < text.size() && !unicode::is_space(text[token_end])) ++token_end;
    const std::size_t url = find_url_start(text, i, token_end);
    out.append(text.substr(i, url - i));
    if (url < token_end) out += U"URL";
    i = token_end;
  }
  return out;
}

std::u32string preprocess(std::u32string_view input, const PreprocessConfig& config) {
  std::u32string text = config.replace_urls ? replace_urls(input) : std::u32string(input);
  const std::size_t n = text.size();

  // Mark protected tag occurrences: a run of alphanumerics equal to a tag.
  std::vector<bool> keep(n, false);
  if (!config.protected_tags.empty()) {
    std::size_t i = 0;
    while (i < n) {
      if (!unicode::is_alnum(text[i])) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < n && unicode::is_alnum(text[j])) ++j;
      if (config.protected_tags.contains(text.substr(i, j - i))) {
        for (std::size_t k = i; k < j; ++k) keep[k] = true;
      }
      i = j;
    }
  }

  std::u32string out;
  out.reserve(n);
  bool pending_space = false;
  for (std::size_t i = 0; i < n; ++i) {
    char32_t c = text[i];
    if (!keep[i]) {
      const bool drop = (config.remove_numbers && unicode::is_digit(c)) ||
                        (config.remove_punctuation && unicode::is_punctuation(c)) ||
                        (config.remove_symbols && unicode::is_symbol(c));
      if (drop || unicode::is_space(c)) {
        pending_space = true;
        continue;
      }
      if (config.lowercase) c = unicode::to_lower(c);
    }
    if (pending_space && !out.empty()) out.push_back(U' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

}  // namespace propaganda
