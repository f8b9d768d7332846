#include <gtest/gtest.h>

#include "oracles.hpp"
#include "propaganda/textprep.hpp"

using namespace propaganda;
using oracle::u32;

TEST(ReplaceUrls, Examples) {
  EXPECT_EQ(replace_urls(U"see http://a.b/c now"), U"see URL now");
  EXPECT_EQ(replace_urls(U"no links here"), U"no links here");
  EXPECT_EQ(replace_urls(U"www.x.com and https://y.z"), U"URL and URL");
}

TEST(ReplaceUrls, TokenEdges) {
  EXPECT_EQ(replace_urls(U"(https://x.y/z)"), U"(URL");
  EXPECT_EQ(replace_urls(U"awww.x.com"), U"awww.x.com");
  EXPECT_EQ(replace_urls(U"://nothing"), U"://nothing");
  EXPECT_EQ(replace_urls(U"URL"), U"URL");
}

TEST(Preprocess, Examples) {
  EXPECT_EQ(preprocess(U"Vote #2020 NOW!!!"), U"vote now");
  EXPECT_EQ(preprocess(U"NATION strikes back"), U"NATION strikes back");
  EXPECT_EQ(preprocess(U""), U"");
}

TEST(Preprocess, DeletedCharactersBecomeSpaces) {
  EXPECT_EQ(preprocess(U"U.S."), U"u s");
  EXPECT_EQ(preprocess(U"pre-war"), U"pre war");
  EXPECT_EQ(preprocess(U"  a \t\n b  "), U"a b");
}

TEST(Preprocess, TagsProtectedOnlyAsWholeTokens) {
  EXPECT_EQ(preprocess(U"NATION's PERSON"), U"NATION s PERSON");
  EXPECT_EQ(preprocess(U"NATIONAL"), U"national");
  EXPECT_EQ(preprocess(U"see http://a.b/c now"), U"see URL now");
}

TEST(Preprocess, UnicodeCategories) {
  EXPECT_EQ(preprocess(U"Café €5 ٣ — ok 😀"), U"café ok");
  // Letter-like numbers (Nl) are not Nd digits and survive.
  EXPECT_EQ(preprocess(U"Ⅻ"), U"ⅻ");
}

TEST(Preprocess, StagesCanBeDisabled) {
  PreprocessConfig keep;
  keep.remove_numbers = false;
  keep.lowercase = false;
  EXPECT_EQ(preprocess(U"Vote #2020 NOW!!!", keep), U"Vote 2020 NOW");
  PreprocessConfig no_urls;
  no_urls.replace_urls = false;
  EXPECT_EQ(preprocess(U"www.x.com", no_urls), U"www x com");
}

TEST(Preprocess, IdempotentOnRandomStrings) {
  Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    const auto t = oracle::random_messy_text(rng, {});
    const auto once = preprocess(t);
    EXPECT_EQ(preprocess(once), once) << oracle::u8(t);
  }
}
