#include <gtest/gtest.h>

#include <algorithm>

#include "oracles.hpp"
#include "propaganda/errors.hpp"
#include "propaganda/eval.hpp"
#include "propaganda/rng.hpp"

using namespace propaganda;

namespace {
constexpr auto kA = TechniqueLabel::kLoadedLanguage;
constexpr auto kB = TechniqueLabel::kDoubt;
}  // namespace

TEST(Split, Sizes) {
  const auto s = split_2_1_indices(6, 1);
  EXPECT_EQ(s.train.size(), 4u);
  EXPECT_EQ(s.dev.size(), 2u);
  const auto big = split_2_1_indices(6129, 1);
  EXPECT_EQ(big.train.size(), 4086u);
  EXPECT_EQ(big.dev.size(), 2043u);
  EXPECT_THROW(split_2_1_indices(2, 1), SplitError);
}

TEST(Split, PartitionAndDeterminism) {
  const auto a = split_2_1_indices(100, 9);
  const auto b = split_2_1_indices(100, 9);
  EXPECT_EQ(a.train, b.train);
  EXPECT_EQ(a.dev, b.dev);
  std::vector<std::size_t> all = a.train;
  all.insert(all.end(), a.dev.begin(), a.dev.end());
  std::sort(all.begin(), all.end());
  for (std::size_t i = 0; i < all.size(); ++i) EXPECT_EQ(all[i], i);
  EXPECT_NE(split_2_1_indices(100, 10).dev, a.dev);

  const std::vector<int> items{10, 11, 12, 13, 14, 15};
  const auto [train, dev] = split_2_1(items, 3);
  EXPECT_EQ(train.size() + dev.size(), items.size());
}

TEST(MicroF1, Perfect) {
  const std::vector<TechniqueLabel> g{kA, kB, kB};
  const auto r = micro_f1(g, g);
  EXPECT_EQ(r.overall_micro_f1, 1.0);
  for (const auto& [l, s] : r.per_label) EXPECT_EQ(s.f1, 1.0);
}

TEST(MicroF1, HandCountedExample) {
  const std::vector<TechniqueLabel> g{kA, kA, kB};
  const std::vector<TechniqueLabel> p{kA, kB, kB};
  const auto r = micro_f1(g, p);
  EXPECT_EQ(r.overall_micro_f1, 2.0 / 3.0);
  EXPECT_EQ(r.per_label.at(kA).precision, 1.0);
  EXPECT_EQ(r.per_label.at(kA).recall, 0.5);
  EXPECT_DOUBLE_EQ(r.per_label.at(kA).f1, 2.0 / 3.0);
  EXPECT_EQ(r.per_label.at(kB).precision, 0.5);
  EXPECT_EQ(r.per_label.at(kB).recall, 1.0);
  EXPECT_DOUBLE_EQ(r.per_label.at(kB).f1, 2.0 / 3.0);
  EXPECT_EQ(r.per_label.at(kA).support, 2u);
}

TEST(MicroF1, SingleWrong) {
  const std::vector<TechniqueLabel> g{kA};
  const std::vector<TechniqueLabel> p{kB};
  const auto r = micro_f1(g, p);
  EXPECT_EQ(r.overall_micro_f1, 0.0);
  EXPECT_EQ(r.per_label.at(kA).precision, 0.0);  // zero denominator
}

TEST(MicroF1, Errors) {
  const std::vector<TechniqueLabel> g{kA};
  EXPECT_THROW(micro_f1(g, {}), ShapeError);
  EXPECT_THROW(micro_f1({}, {}), ShapeError);
}

TEST(MicroF1, EqualsAccuracy) {
  Rng rng(2);
  for (int t = 0; t < 300; ++t) {
    const auto n = 1 + rng.below(60);
    std::vector<TechniqueLabel> g, p;
    for (std::size_t i = 0; i < n; ++i) {
      g.push_back(label_from_index(rng.below(kNumLabels)));
      p.push_back(rng.below(3) ? g.back() : label_from_index(rng.below(kNumLabels)));
    }
    const auto r = micro_f1(g, p);
    EXPECT_EQ(r.overall_micro_f1, oracle::accuracy(g, p));
    EXPECT_EQ(r.micro_precision, r.micro_recall);
  }
}

TEST(Report, Tables) {
  const std::vector<TechniqueLabel> g{kA, kB};
  const auto tsv = report_tsv(micro_f1(g, g));
  EXPECT_EQ(tsv,
            "label\tprecision\trecall\tf1\tsupport\n"
            "Loaded_Language\t100.00\t100.00\t100.00\t1\n"
            "Doubt\t100.00\t100.00\t100.00\t1\n"
            "Overall\t100.00\t100.00\t100.00\t2\n");

  ScoreReport empty;
  EXPECT_EQ(report_tsv(empty), "label\tprecision\trecall\tf1\tsupport\nOverall\t0.00\t0.00\t0.00\t0\n");

  // Stored final-submission score renders as in the published table.
  ScoreReport stored;
  stored.overall_micro_f1 = 0.5720;
  stored.micro_precision = stored.micro_recall = 0.5720;
  const auto text = report_text({"final-submission", "test", {}}, stored);
  EXPECT_NE(text.find("57.20"), std::string::npos);
  EXPECT_NE(text.find("final-submission"), std::string::npos);
}
