#include <benchmark/benchmark.h>

#include "propaganda/bertprep.hpp"
#include "propaganda/rng.hpp"

namespace {

using namespace propaganda;

WordPieceVocab make_vocab() {
  std::vector<std::string> t{"[PAD]", "[UNK]", "[CLS]", "[SEP]"};
  for (char a = 'a'; a <= 'z'; ++a) {
    t.emplace_back(1, a);
    t.push_back("##" + std::string(1, a));
    for (char b = 'a'; b <= 'z'; b += 3) t.push_back(std::string{a, b});
  }
  for (const char* w : {"propaganda", "nation", "vote", "the", "war", "terror", "##ing", "##ed"}) {
    t.emplace_back(w);
  }
  return WordPieceVocab::from_tokens(std::move(t));
}

std::u32string make_text(std::size_t words) {
  static const std::vector<std::u32string> kWords = {
      U"propaganda", U"nation", U"voting", U"The", U"warring", U"terrorized", U"Über",
      U"quixotic",   U"state,", U"zebra!", U"élan"};
  Rng rng(5);
  std::u32string out;
  for (std::size_t i = 0; i < words; ++i) {
    if (i) out += U' ';
    out += kWords[rng.below(kWords.size())];
  }
  return out;
}

void BM_WordPiece(benchmark::State& state) {
  const auto vocab = make_vocab();
  const auto text = make_text(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(wordpiece_tokenize(text, vocab).size());
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_WordPiece)->Range(16, 4096);

void BM_Encode(benchmark::State& state) {
  const auto vocab = make_vocab();
  const auto text = make_text(64);
  for (auto _ : state) benchmark::DoNotOptimize(encode(text, "Slogans", vocab, 128).input_ids.data());
}
BENCHMARK(BM_Encode);

}  // namespace
