#include "propaganda/labels.hpp"

#include <string>

#include "propaganda/errors.hpp"

namespace propaganda {

std::optional<TechniqueLabel> try_parse_label(std::string_view text) {
  for (std::size_t i = 0; i < kNumLabels; ++i) {
    if (kLabelNames[i] == text) return label_from_index(i);
  }
  return std::nullopt;
}

TechniqueLabel parse_label(std::string_view text) {
  if (auto label = try_parse_label(text)) return *label;
  throw LabelError("unknown technique label '" + std::string(text) + "'");
}

std::array<TechniqueLabel, kNumLabels> all_labels() {
  std::array<TechniqueLabel, kNumLabels> out{};
  for (std::size_t i = 0; i < kNumLabels; ++i) out[i] = label_from_index(i);
  return out;
}

}  // namespace propaganda
