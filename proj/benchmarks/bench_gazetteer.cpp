#include <benchmark/benchmark.h>

#include "propaganda/gazetteer.hpp"
#include "propaganda/rng.hpp"
#include "propaganda/textprep.hpp"

namespace {

using namespace propaganda;

const Gazetteer& bundled() {
  static const Gazetteer gaz = [] {
    std::vector<GazetteerEntry> all;
    for (const auto& spec : bundled_lists()) {
      auto e = load_list(spec.path, spec.tag);
      all.insert(all.end(), e.begin(), e.end());
    }
    return Gazetteer(std::move(all));
  }();
  return gaz;
}

// News-like text: mostly filler words, one entity mention in ~20 words.
std::u32string make_text(std::size_t words) {
  static const std::vector<std::u32string> kFiller = {
      U"the", U"government", U"said", U"that", U"officials", U"would", U"never", U"accept",
      U"a", U"deal", U"with", U"anyone", U"who", U"threatens", U"our", U"people,"};
  Rng rng(1);
  const auto& entries = bundled().entries();
  std::u32string out;
  for (std::size_t i = 0; i < words; ++i) {
    if (i) out += U' ';
    out += rng.below(20) == 0 ? entries[rng.below(entries.size())].phrase
                              : kFiller[rng.below(kFiller.size())];
  }
  return out;
}

void BM_GazetteerMap(benchmark::State& state) {
  const auto& gaz = bundled();
  const auto text = make_text(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto r = gaz.map(text);
    benchmark::DoNotOptimize(r.text.data());
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size() * sizeof(char32_t)));
}
BENCHMARK(BM_GazetteerMap)->Range(64, 16384);

void BM_Preprocess(benchmark::State& state) {
  const auto text = make_text(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto r = preprocess(text);
    benchmark::DoNotOptimize(r.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_Preprocess)->Range(64, 16384);

}  // namespace
