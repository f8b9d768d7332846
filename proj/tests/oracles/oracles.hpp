// Reference implementations used only by the tests. They are written from
// the stated rules, not from the library code, and favour clarity over
// speed.
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "propaganda/gazetteer.hpp"
#include "propaganda/labels.hpp"
#include "propaganda/rng.hpp"

namespace oracle {

using propaganda::GazetteerEntry;
using propaganda::GazetteerMatch;

// Tries every phrase at every position, then keeps matches left to right:
// the earliest start wins, then the longest, then the higher priority tag,
// then the earlier entry.
std::vector<GazetteerMatch> brute_force_matches(std::u32string_view text,
                                                const std::vector<GazetteerEntry>& entries,
                                                const std::vector<std::u32string>& priority);

// Dense tf-idf with smoothed idf and L2 rows; columns are the sorted terms.
struct DenseTfidf {
  std::vector<std::string> terms;
  std::vector<std::vector<double>> rows;
};
DenseTfidf dense_tfidf(const std::vector<std::vector<std::string>>& docs);

// Share of positions where gold and pred agree.
double accuracy(const std::vector<propaganda::TechniqueLabel>& gold,
                const std::vector<propaganda::TechniqueLabel>& pred);

// Random test data.
std::u32string random_phrase_text(propaganda::Rng& rng, const std::vector<std::u32string>& words,
                                  std::size_t max_words);
std::u32string random_messy_text(propaganda::Rng& rng, const std::vector<std::u32string>& phrases);

// Toy gazetteer of `n` distinct phrases built from a small word pool so that
// prefixes, overlaps and case variants are common.
std::vector<std::u32string> toy_words();
std::vector<GazetteerEntry> toy_gazetteer(propaganda::Rng& rng, std::size_t n);

std::u32string u32(std::string_view utf8);
std::string u8(std::u32string_view text);

}  // namespace oracle
