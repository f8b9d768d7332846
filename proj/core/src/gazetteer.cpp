#include "propaganda/gazetteer.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

#include "propaganda/corpus.hpp"
#include "propaganda/errors.hpp"
#include "propaganda/textprep.hpp"
#include "propaganda/unicode.hpp"

#ifndef PROPAGANDA_LIST_DIR
#define PROPAGANDA_LIST_DIR "data/lists"
#endif

namespace propaganda {

namespace {

bool is_word_char(char32_t c) { return unicode::is_alnum(c) || unicode::is_mark(c); }

bool is_hyphen(char32_t c) { return c == U'-' || c == U'‐' || c == U'‑'; }

bool is_token_char(std::u32string_view text, std::size_t i) {
  if (is_word_char(text[i])) return true;
  return is_hyphen(text[i]) && i > 0 && i + 1 < text.size() && is_word_char(text[i - 1]) &&
         is_word_char(text[i + 1]);
}

std::u32string trim(std::u32string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && unicode::is_space(s[b])) ++b;
  while (e > b && unicode::is_space(s[e - 1])) --e;
  return std::u32string(s.substr(b, e - b));
}

// Lowercased alphanumeric runs of a phrase.
std::vector<std::u32string> folded_words(std::u32string_view phrase) {
  std::vector<std::u32string> words;
  std::u32string cur;
  for (char32_t c : phrase) {
    if (unicode::is_alnum(c)) {
      cur.push_back(unicode::to_lower(c));
    } else if (!cur.empty()) {
      words.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) words.push_back(std::move(cur));
  return words;
}

}  // namespace

std::vector<GazetteerEntry> parse_list(std::string_view content, std::u32string_view tag,
                                       std::string_view source) {
  std::u32string text;
  try {
    text = unicode::from_utf8(content);
  } catch (const EncodingError& e) {
    throw EncodingError(std::string(source) + ": " + e.what());
  }
  std::vector<GazetteerEntry> entries;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find(U'\n', pos);
    if (eol == std::u32string::npos) eol = text.size();
    auto line = trim(std::u32string_view(text).substr(pos, eol - pos));
    pos = eol + 1;
    if (line.empty() || line.front() == U'#') continue;
    entries.push_back({std::move(line), std::u32string(tag)});
  }
  if (entries.empty()) {
    throw EmptyListError(std::string(source) + ": list has no entries");
  }
  return entries;
}

std::vector<GazetteerEntry> load_list(const std::filesystem::path& path, std::u32string_view tag) {
  return parse_list(read_file(path), tag, path.string());
}

// PROPAGANDA_LIST_DIR in the environment wins, so an installed library can be
// pointed at share/propaganda/lists.
std::filesystem::path default_list_dir() {
  if (const char* env = std::getenv("PROPAGANDA_LIST_DIR"); env != nullptr && *env != '\0') {
    return env;
  }
  return PROPAGANDA_LIST_DIR;
}

std::vector<ListSpec> bundled_lists(const std::filesystem::path& dir) {
  return {
      {"countries", dir / "List_Countries.txt", std::u32string(U"NATION")},
      {"religion", dir / "List_Religion.txt", std::u32string(U"RELIGION")},
      {"politics", dir / "List_Politics.txt", std::u32string(U"POLITICS")},
      {"slogans", dir / "List_Slogans.txt", std::u32string(U"SLOGANS")},
  };
}

std::vector<std::u32string> default_tag_priority() {
  return {U"SLOGANS", U"NATION", U"RELIGION", U"POLITICS"};
}

bool matches_case_insensitively(std::u32string_view phrase) {
  if (phrase.size() < 4) return false;
  return std::any_of(phrase.begin(), phrase.end(), [](char32_t c) { return unicode::is_lower(c); });
}

bool is_word_boundary(std::u32string_view text, std::size_t pos) {
  if (pos == 0 || pos >= text.size()) return true;
  return !(is_token_char(text, pos - 1) && is_token_char(text, pos));
}

Gazetteer::Gazetteer(std::vector<GazetteerEntry> entries, std::vector<std::u32string> tag_priority)
    : entries_(std::move(entries)), priority_(std::move(tag_priority)) {
  std::set<std::u32string> reserved;
  for (const auto& t : default_protected_tags()) reserved.insert(unicode::to_lower(t));
  for (const auto& e : entries_) reserved.insert(unicode::to_lower(e.tag));

  exact_.emplace_back();
  folded_.emplace_back();
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (e.phrase.empty()) throw FormatError("gazetteer phrase is empty");
    if (e.tag.empty()) throw FormatError("gazetteer tag is empty");
    for (const auto& w : folded_words(e.phrase)) {
      if (reserved.contains(w)) {
        throw FormatError("gazetteer phrase '" + unicode::to_utf8(e.phrase) +
                          "' contains the tag word '" + unicode::to_utf8(w) + "'");
      }
    }
    if (std::find(priority_.begin(), priority_.end(), e.tag) == priority_.end()) {
      priority_.push_back(e.tag);
    }
    if (matches_case_insensitively(e.phrase)) {
      insert(folded_, unicode::to_lower(e.phrase), i);
    } else {
      insert(exact_, e.phrase, i);
    }
  }
}

std::size_t Gazetteer::tag_rank(std::u32string_view tag) const {
  auto it = std::find(priority_.begin(), priority_.end(), tag);
  return static_cast<std::size_t>(it - priority_.begin());
}

bool Gazetteer::better(std::size_t candidate, std::size_t incumbent) const {
  if (incumbent == kNone) return true;
  const auto a = tag_rank(entries_[candidate].tag);
  const auto b = tag_rank(entries_[incumbent].tag);
  if (a != b) return a < b;
  return candidate < incumbent;
}

void Gazetteer::insert(std::vector<Node>& trie, std::u32string_view key, std::size_t entry) {
  std::size_t node = 0;
  for (char32_t c : key) {
    std::size_t next = child(trie, node, c);
    if (next == kNone) {
      next = trie.size();
      auto& kids = trie[node].children;
      auto it = std::lower_bound(kids.begin(), kids.end(), c,
                                 [](const auto& p, char32_t v) { return p.first < v; });
      kids.insert(it, {c, next});
      trie.emplace_back();
    }
    node = next;
  }
  if (better(entry, trie[node].entry)) trie[node].entry = entry;
}

std::size_t Gazetteer::child(const std::vector<Node>& trie, std::size_t node, char32_t c) {
  const auto& kids = trie[node].children;
  auto it = std::lower_bound(kids.begin(), kids.end(), c,
                             [](const auto& p, char32_t v) { return p.first < v; });
  return it != kids.end() && it->first == c ? it->second : kNone;
}

std::vector<GazetteerMatch> Gazetteer::find_matches(std::u32string_view text) const {
  std::vector<GazetteerMatch> matches;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!is_word_boundary(text, i)) {
      ++i;
      continue;
    }
    std::size_t best_len = 0;
    std::size_t best_entry = kNone;
    auto consider = [&](std::size_t len, std::size_t entry) {
      if (len > best_len || (len == best_len && better(entry, best_entry))) {
        best_len = len;
        best_entry = entry;
      }
    };

    std::size_t ex = 0;
    std::size_t fo = 0;
    for (std::size_t k = i; k < text.size() && (ex != kNone || fo != kNone); ++k) {
      if (ex != kNone) ex = child(exact_, ex, text[k]);
      if (fo != kNone) fo = child(folded_, fo, unicode::to_lower(text[k]));
      const std::size_t len = k + 1 - i;
      if (!is_word_boundary(text, k + 1)) continue;
      if (ex != kNone && exact_[ex].entry != kNone) consider(len, exact_[ex].entry);
      if (fo != kNone && folded_[fo].entry != kNone) consider(len, folded_[fo].entry);
    }

    if (best_entry != kNone) {
      matches.push_back({i, i + best_len, best_entry});
      i += best_len;
    } else {
      ++i;
    }
  }
  return matches;
}

RewriteResult Gazetteer::map(std::u32string_view text) const {
  std::vector<Replacement> reps;
  for (const auto& m : find_matches(text)) reps.push_back({m.begin, m.end, entries_[m.entry].tag});
  return apply_replacements(text, std::move(reps));
}

RewriteResult map_entities(std::u32string_view text, const Gazetteer& gazetteer) {
  return gazetteer.map(text);
}

}  // namespace propaganda
