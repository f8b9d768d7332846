#include "propaganda/rewrite.hpp"

#include "propaganda/errors.hpp"

namespace propaganda {

RewriteResult apply_replacements(std::u32string_view original,
                                 std::vector<Replacement> replacements) {
  RewriteResult result;
  result.offset_map.resize(original.size() + 1);
  result.text.reserve(original.size());

  std::size_t cursor = 0;
  for (const auto& rep : replacements) {
    if (rep.begin < cursor || rep.begin >= rep.end || rep.end > original.size()) {
      throw SpanError("replacement [" + std::to_string(rep.begin) + ", " +
                      std::to_string(rep.end) + ") overlaps, is unsorted or out of range");
    }
    for (; cursor < rep.begin; ++cursor) {
      result.offset_map[cursor] = result.text.size();
      result.text.push_back(original[cursor]);
    }
    const std::size_t tag_start = result.text.size();
    for (; cursor < rep.end; ++cursor) result.offset_map[cursor] = tag_start;
    result.text += rep.tag;
  }
  for (; cursor < original.size(); ++cursor) {
    result.offset_map[cursor] = result.text.size();
    result.text.push_back(original[cursor]);
  }
  result.offset_map[original.size()] = result.text.size();
  result.replacements = std::move(replacements);
  return result;
}

RewriteResult identity_rewrite(std::u32string_view original) {
  return apply_replacements(original, {});
}

std::vector<std::size_t> compose_offset_maps(const std::vector<std::size_t>& first,
                                             const std::vector<std::size_t>& second) {
  std::vector<std::size_t> out(first.size());
  for (std::size_t i = 0; i < first.size(); ++i) out[i] = second.at(first[i]);
  return out;
}

}  // namespace propaganda
