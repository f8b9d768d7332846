#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "propaganda/rewrite.hpp"

namespace propaganda {

struct GazetteerEntry {
  std::u32string phrase;
  std::u32string tag;
};

// One phrase per line, trimmed; '#' comment lines and blank lines skipped.
// Throws IOError when unreadable, EmptyListError when nothing remains.
std::vector<GazetteerEntry> load_list(const std::filesystem::path& path, std::u32string_view tag);
std::vector<GazetteerEntry> parse_list(std::string_view content, std::u32string_view tag,
                                       std::string_view source = "<memory>");

// Directory holding the bundled List_*.txt files: $PROPAGANDA_LIST_DIR when
// set, otherwise the source tree the library was built from.
std::filesystem::path default_list_dir();

// The four bundled lists, by name.
struct ListSpec {
  std::string name;  // e.g. "countries"
  std::filesystem::path path;
  std::u32string tag;
};
std::vector<ListSpec> bundled_lists(const std::filesystem::path& dir = default_list_dir());

// Higher priority first. Used when two entries match the same span.
std::vector<std::u32string> default_tag_priority();

// Entries of at least four code points that are not all-uppercase match
// case-insensitively; everything else (acronyms, short words) matches exactly.
bool matches_case_insensitively(std::u32string_view phrase);

// True when `text` has a word boundary at `pos` (0 <= pos <= size). Word
// characters are letters, digits and marks; a hyphen between two word
// characters is part of the word.
bool is_word_boundary(std::u32string_view text, std::size_t pos);

struct GazetteerMatch {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t entry = 0;  // index into Gazetteer::entries()

  friend bool operator==(const GazetteerMatch&, const GazetteerMatch&) = default;
};

// Immutable phrase matcher over a set of tagged lists. Matching walks a
// code point trie (one exact, one case-folded) from every word-boundary
// position and keeps the longest phrase that also ends on a boundary.
class Gazetteer {
 public:
  explicit Gazetteer(std::vector<GazetteerEntry> entries,
                     std::vector<std::u32string> tag_priority = default_tag_priority());

  // Non-overlapping leftmost-longest matches, in text order.
  std::vector<GazetteerMatch> find_matches(std::u32string_view text) const;

  RewriteResult map(std::u32string_view text) const;

  const std::vector<GazetteerEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  // Lower rank wins ties.
  std::size_t tag_rank(std::u32string_view tag) const;

 private:
  struct Node {
    std::vector<std::pair<char32_t, std::size_t>> children;  // sorted by code point
    std::size_t entry = kNone;
  };
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  void insert(std::vector<Node>& trie, std::u32string_view key, std::size_t entry);
  static std::size_t child(const std::vector<Node>& trie, std::size_t node, char32_t c);
  bool better(std::size_t candidate, std::size_t incumbent) const;

  std::vector<GazetteerEntry> entries_;
  std::vector<std::u32string> priority_;
  std::vector<Node> exact_;
  std::vector<Node> folded_;
};

RewriteResult map_entities(std::u32string_view text, const Gazetteer& gazetteer);

}  // namespace propaganda
