#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace propaganda {

// A span [begin, end) of the original text replaced by `tag`.
struct Replacement {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::u32string tag;

  friend bool operator==(const Replacement&, const Replacement&) = default;
};

// Output of any span-replacing rewrite (gazetteer or entity mapping).
//
// `offset_map` has original.size() + 1 entries. Index i maps to the position
// of original character i in `text`; characters inside a replacement map to
// the start of its tag, the replacement end maps to the end of the tag. The
// map is non-decreasing.
struct RewriteResult {
  std::u32string text;
  std::vector<std::size_t> offset_map;
  std::vector<Replacement> replacements;

  // Maps an original span to rewritten coordinates.
  std::pair<std::size_t, std::size_t> project(std::size_t begin, std::size_t end) const {
    return {offset_map.at(begin), offset_map.at(end)};
  }
};

// Requires `replacements` sorted and pairwise disjoint, all within `original`.
RewriteResult apply_replacements(std::u32string_view original,
                                 std::vector<Replacement> replacements);

// Identity rewrite.
RewriteResult identity_rewrite(std::u32string_view original);

// Offset map of `second` applied after `first` (second's input is first.text).
std::vector<std::size_t> compose_offset_maps(const std::vector<std::size_t>& first,
                                             const std::vector<std::size_t>& second);

}  // namespace propaganda
