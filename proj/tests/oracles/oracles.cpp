#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "propaganda/unicode.hpp"

namespace oracle {

namespace uc = propaganda::unicode;

namespace {

bool wordish(char32_t c) { return uc::is_letter(c) || uc::is_number(c) || uc::is_mark(c); }

// Character i belongs to a token: a word character, or a hyphen squeezed
// between two of them.
bool in_token(std::u32string_view t, std::size_t i) {
  if (wordish(t[i])) return true;
  if (t[i] != U'-' && t[i] != U'‐' && t[i] != U'‑') return false;
  return i > 0 && i + 1 < t.size() && wordish(t[i - 1]) && wordish(t[i + 1]);
}

bool boundary(std::u32string_view t, std::size_t pos) {
  if (pos == 0 || pos == t.size()) return true;
  return !in_token(t, pos - 1) || !in_token(t, pos);
}

bool case_insensitive(std::u32string_view phrase) {
  if (phrase.size() < 4) return false;
  return std::any_of(phrase.begin(), phrase.end(), [](char32_t c) { return uc::is_lower(c); });
}

bool equal_at(std::u32string_view text, std::size_t pos, std::u32string_view phrase) {
  if (pos + phrase.size() > text.size()) return false;
  const bool ci = case_insensitive(phrase);
  for (std::size_t k = 0; k < phrase.size(); ++k) {
    char32_t a = text[pos + k];
    char32_t b = phrase[k];
    if (a == b) continue;
    if (ci && uc::to_lower(a) == uc::to_lower(b)) continue;
    return false;
  }
  return true;
}

}  // namespace

std::vector<GazetteerMatch> brute_force_matches(std::u32string_view text,
                                                const std::vector<GazetteerEntry>& entries,
                                                const std::vector<std::u32string>& priority) {
  auto rank = [&](const std::u32string& tag) {
    auto it = std::find(priority.begin(), priority.end(), tag);
    return static_cast<std::size_t>(it - priority.begin());
  };

  std::vector<GazetteerMatch> all;
  for (std::size_t pos = 0; pos < text.size(); ++pos) {
    for (std::size_t e = 0; e < entries.size(); ++e) {
      const auto& phrase = entries[e].phrase;
      if (!equal_at(text, pos, phrase)) continue;
      if (!boundary(text, pos) || !boundary(text, pos + phrase.size())) continue;
      all.push_back({pos, pos + phrase.size(), e});
    }
  }

  std::vector<GazetteerMatch> kept;
  std::size_t cursor = 0;
  while (true) {
    const GazetteerMatch* best = nullptr;
    for (const auto& m : all) {
      if (m.begin < cursor) continue;
      if (!best) {
        best = &m;
        continue;
      }
      if (m.begin != best->begin) {
        if (m.begin < best->begin) best = &m;
        continue;
      }
      const auto lm = m.end - m.begin;
      const auto lb = best->end - best->begin;
      if (lm != lb) {
        if (lm > lb) best = &m;
        continue;
      }
      const auto rm = rank(entries[m.entry].tag);
      const auto rb = rank(entries[best->entry].tag);
      if (rm < rb || (rm == rb && m.entry < best->entry)) best = &m;
    }
    if (!best) break;
    kept.push_back(*best);
    cursor = best->end;
  }
  return kept;
}

DenseTfidf dense_tfidf(const std::vector<std::vector<std::string>>& docs) {
  DenseTfidf out;
  for (const auto& d : docs) out.terms.insert(out.terms.end(), d.begin(), d.end());
  std::sort(out.terms.begin(), out.terms.end());
  out.terms.erase(std::unique(out.terms.begin(), out.terms.end()), out.terms.end());

  const std::size_t n = docs.size();
  const std::size_t m = out.terms.size();
  std::vector<std::vector<double>> tf(n, std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& t : docs[i]) {
      const auto j = std::lower_bound(out.terms.begin(), out.terms.end(), t) - out.terms.begin();
      tf[i][j] += 1.0;
    }
  }
  std::vector<double> idf(m);
  for (std::size_t j = 0; j < m; ++j) {
    double df = 0;
    for (std::size_t i = 0; i < n; ++i) df += tf[i][j] > 0 ? 1 : 0;
    idf[j] = std::log((1.0 + static_cast<double>(n)) / (1.0 + df)) + 1.0;
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row(m);
    double sq = 0;
    for (std::size_t j = 0; j < m; ++j) {
      row[j] = tf[i][j] * idf[j];
      sq += row[j] * row[j];
    }
    if (sq > 0) {
      for (auto& v : row) v /= std::sqrt(sq);
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

double accuracy(const std::vector<propaganda::TechniqueLabel>& gold,
                const std::vector<propaganda::TechniqueLabel>& pred) {
  std::size_t hit = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) hit += gold[i] == pred[i] ? 1 : 0;
  return static_cast<double>(hit) / static_cast<double>(gold.size());
}

std::vector<std::u32string> toy_words() {
  return {U"ab", U"abc", U"Ab", U"b", U"cd", U"x-y", U"x", U"y", U"Über", U"über", U"ABCD", U"abcd", U"z9"};
}

std::u32string random_phrase_text(propaganda::Rng& rng, const std::vector<std::u32string>& words,
                                  std::size_t max_words) {
  static const std::vector<std::u32string> kSeparators = {U" ", U" ", U" ", U", ", U"-", U".", U"",
                                                          U"\n", U" (", U") ", U"'s "};
  std::u32string out;
  const auto n = rng.below(max_words + 1);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0 || rng.below(4) == 0) out += kSeparators[rng.below(kSeparators.size())];
    auto w = words[rng.below(words.size())];
    if (rng.below(5) == 0) {
      for (auto& c : w) {
        if (c >= U'a' && c <= U'z') c -= 32;
      }
    }
    out += w;
  }
  return out;
}

std::vector<GazetteerEntry> toy_gazetteer(propaganda::Rng& rng, std::size_t n) {
  static const std::vector<std::u32string> kTags = {U"NATION", U"RELIGION", U"POLITICS", U"SLOGANS"};
  const auto words = toy_words();
  std::vector<GazetteerEntry> entries;
  std::vector<std::u32string> seen;
  while (entries.size() < n) {
    const auto k = 1 + rng.below(3);
    std::u32string phrase;
    for (std::size_t i = 0; i < k; ++i) {
      if (i > 0) phrase += rng.below(4) == 0 ? U"-" : U" ";
      phrase += words[rng.below(words.size())];
    }
    // Same phrase under two tags is allowed; tag priority decides.
    const auto tag = kTags[rng.below(kTags.size())];
    bool dup = false;
    for (const auto& e : entries) dup = dup || (e.phrase == phrase && e.tag == tag);
    if (!dup) entries.push_back({phrase, tag});
  }
  return entries;
}

std::u32string random_messy_text(propaganda::Rng& rng, const std::vector<std::u32string>& phrases) {
  static const std::vector<std::u32string> kPieces = {
      U" ",       U"  ",      U"\t",        U"\n",         U",",           U".",
      U"!!",      U"#",       U"$5",        U"2020",       U"U.S.",        U"NATION",
      U"PERSON",  U"URL",     U"SLOGANS",   U"nation",     U"Nation-wide", U"http://a.b/c",
      U"www.x.com", U"(see)", U"café",      U"naïve",      U"Ünïcödé",     U"—",
      U"€",       U"😀",      U"it's",      U"Mr. Smith",  U"RELIGION's",  U"POLITICS-",
      U"the",     U"Vote",    U"NOW",       U"x_y",        U"'quoted'",    U"ftp://h",
      U"_",       U"-",       U"·",         U"٣",          U"Ⅻ"};
  std::u32string out;
  const auto n = rng.below(16);
  for (std::size_t i = 0; i < n; ++i) {
    if (!phrases.empty() && rng.below(3) == 0) {
      out += phrases[rng.below(phrases.size())];
    } else {
      out += kPieces[rng.below(kPieces.size())];
    }
  }
  return out;
}

std::u32string u32(std::string_view utf8) { return uc::from_utf8(utf8); }
std::string u8(std::u32string_view text) { return uc::to_utf8(text); }

}  // namespace oracle
