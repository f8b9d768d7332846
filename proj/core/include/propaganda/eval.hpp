#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "propaganda/errors.hpp"
#include "propaganda/labels.hpp"
#include "propaganda/rng.hpp"

namespace propaganda {

struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> dev;
};

// Seeded shuffle, cut at floor(2n/3), then the training part is shuffled
// again. Depends only on (n, seed). Throws SplitError when n < 3.
SplitIndices split_2_1_indices(std::size_t n, std::uint64_t seed);

template <typename T>
std::pair<std::vector<T>, std::vector<T>> split_2_1(const std::vector<T>& items,
                                                    std::uint64_t seed) {
  const auto idx = split_2_1_indices(items.size(), seed);
  std::pair<std::vector<T>, std::vector<T>> out;
  out.first.reserve(idx.train.size());
  out.second.reserve(idx.dev.size());
  for (auto i : idx.train) out.first.push_back(items[i]);
  for (auto i : idx.dev) out.second.push_back(items[i]);
  return out;
}

struct LabelScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;  // gold instances of the label
};

struct ScoreReport {
  std::map<TechniqueLabel, LabelScore> per_label;  // labels seen in gold or predictions
  double micro_precision = 0.0;
  double micro_recall = 0.0;
  double overall_micro_f1 = 0.0;
  std::size_t n_instances = 0;
};

// Per-label one-vs-rest scores and micro averages from summed TP/FP/FN.
// A ratio with a zero denominator is 0. Throws ShapeError when the lengths
// differ or are zero.
ScoreReport micro_f1(std::span<const TechniqueLabel> gold, std::span<const TechniqueLabel> pred);

struct RunMetadata {
  std::string name;
  std::string split;  // which data produced the scores, e.g. "internal-dev"
  std::vector<std::pair<std::string, std::string>> extra;
};

// Columns label, precision, recall, f1, support; scores are x100 with two
// decimals; the last row is "Overall".
std::string report_tsv(const ScoreReport& report);

// The same rows as an aligned plain-text table preceded by the metadata.
std::string report_text(const RunMetadata& meta, const ScoreReport& report);

}  // namespace propaganda
