#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace propaganda {

// The fourteen technique classes of the technique-classification task, in
// the canonical order used for label ids, report rows and tie breaking.
enum class TechniqueLabel : unsigned char {
  kLoadedLanguage,
  kNameCallingLabeling,
  kRepetition,
  kDoubt,
  kExaggerationMinimisation,
  kAppealToFearPrejudice,
  kFlagWaving,
  kCausalOversimplification,
  kAppealToAuthority,
  kSlogans,
  kBlackAndWhiteFallacy,
  kWhataboutismStrawMen,
  kThoughtTerminatingCliches,
  kBandwagonReductioAdHitlerum,
};

inline constexpr std::size_t kNumLabels = 14;

inline constexpr std::array<std::string_view, kNumLabels> kLabelNames = {
    "Loaded_Language",
    "Name_Calling,Labeling",
    "Repetition",
    "Doubt",
    "Exaggeration,Minimisation",
    "Appeal_to_fear-prejudice",
    "Flag-Waving",
    "Causal_Oversimplification",
    "Appeal_to_Authority",
    "Slogans",
    "Black-and-White_Fallacy",
    "Whataboutism,Straw_Men",
    "Thought-terminating_Cliches",
    "Bandwagon,Reductio_ad_hitlerum",
};

constexpr std::size_t label_index(TechniqueLabel label) {
  return static_cast<std::size_t>(label);
}

constexpr TechniqueLabel label_from_index(std::size_t index) {
  return static_cast<TechniqueLabel>(index);
}

constexpr std::string_view to_string(TechniqueLabel label) {
  return kLabelNames[label_index(label)];
}

// Exact, case-sensitive match against the canonical spelling.
std::optional<TechniqueLabel> try_parse_label(std::string_view text);

// Throws LabelError for anything outside the fourteen names.
TechniqueLabel parse_label(std::string_view text);

std::array<TechniqueLabel, kNumLabels> all_labels();

}  // namespace propaganda
