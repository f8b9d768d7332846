#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "propaganda/corpus.hpp"

namespace propaganda {

// Desk-scale stand-in for the task corpus. Every label has its own keywords;
// four labels additionally carry a gazetteer entity (country, religious
// group, political group, slogan) and Appeal_to_Authority carries a person
// name. Some entity fragments omit the keywords, so only the entity type
// identifies them.
//
// The train/dev partition is the one split_2_1 produces for the same seed on
// the full fragment list, and entity surface forms are drawn from disjoint
// pools for the two sides.
struct SyntheticCorpus {
  std::vector<Article> articles;
  std::vector<Annotation> annotations;
  std::vector<LabeledFragment> fragments;  // annotation order
  std::vector<bool> in_dev;                // parallel to fragments
  std::set<std::u32string> train_surface_forms;
  std::set<std::u32string> dev_surface_forms;
};

struct SynthOptions {
  double keywordless_rate = 0.25;  // share of entity fragments without keywords
  std::size_t fragments_per_article = 10;
};

SyntheticCorpus make_synthetic_corpus(std::uint64_t seed, std::size_t n_per_label,
                                      const std::filesystem::path& list_dir,
                                      const SynthOptions& options = {});

// articles/article<id>.txt plus annotations.tsv under `out_dir`.
void write_synthetic_corpus(const SyntheticCorpus& corpus, const std::filesystem::path& out_dir);

// Vocabulary-free filler words used by the generator; exposed for tests.
const std::vector<std::string>& synthetic_filler_words();
const std::vector<std::string>& synthetic_keywords(TechniqueLabel label);

}  // namespace propaganda
