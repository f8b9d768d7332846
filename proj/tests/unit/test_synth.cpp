#include <gtest/gtest.h>

#include <set>

#include "propaganda/corpus.hpp"
#include "propaganda/eval.hpp"
#include "propaganda/gazetteer.hpp"
#include "propaganda/synth.hpp"
#include "scratch_dir.hpp"

using namespace propaganda;

TEST(Synth, SizesAndLabelBalance) {
  const auto c = make_synthetic_corpus(1, 10, default_list_dir());
  ASSERT_EQ(c.fragments.size(), 140u);
  std::vector<int> per(kNumLabels, 0);
  for (const auto& f : c.fragments) ++per[label_index(f.label)];
  for (int n : per) EXPECT_EQ(n, 10);
}

TEST(Synth, FilesParseBack) {
  oracle::ScratchDir dir;
  const auto c = make_synthetic_corpus(1, 10, default_list_dir());
  write_synthetic_corpus(c, dir.path());
  const auto loaded = load_corpus(dir / "articles", dir / "annotations.tsv");
  EXPECT_EQ(loaded, c.fragments);
}

TEST(Synth, SameSeedSameFiles) {
  oracle::ScratchDir a, b;
  write_synthetic_corpus(make_synthetic_corpus(5, 6, default_list_dir()), a.path());
  write_synthetic_corpus(make_synthetic_corpus(5, 6, default_list_dir()), b.path());
  EXPECT_EQ(read_file(a / "annotations.tsv"), read_file(b / "annotations.tsv"));
  for (const auto& entry : std::filesystem::directory_iterator(a / "articles")) {
    EXPECT_EQ(read_file(entry.path()), read_file(b / "articles" / entry.path().filename().string()));
  }
  EXPECT_NE(make_synthetic_corpus(6, 6, default_list_dir()).fragments,
            make_synthetic_corpus(5, 6, default_list_dir()).fragments);
}

TEST(Synth, DevMembershipFollowsSplitAndSurfaceFormsAreDisjoint) {
  const auto c = make_synthetic_corpus(1, 60, default_list_dir());
  const auto split = split_2_1_indices(c.fragments.size(), 1);
  std::set<std::size_t> dev(split.dev.begin(), split.dev.end());
  for (std::size_t i = 0; i < c.fragments.size(); ++i) EXPECT_EQ(c.in_dev[i], dev.contains(i));

  EXPECT_FALSE(c.train_surface_forms.empty());
  for (const auto& s : c.dev_surface_forms) EXPECT_FALSE(c.train_surface_forms.contains(s));
  // Every dev surface form actually occurs in some dev fragment.
  for (const auto& s : c.dev_surface_forms) {
    bool found = false;
    for (std::size_t i = 0; i < c.fragments.size() && !found; ++i) {
      found = c.in_dev[i] && c.fragments[i].text.find(s) != std::u32string::npos;
    }
    EXPECT_TRUE(found);
  }
}
