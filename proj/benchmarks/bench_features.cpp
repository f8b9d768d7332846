#include <benchmark/benchmark.h>

#include "propaganda/features.hpp"
#include "propaganda/labels.hpp"
#include "propaganda/linmod.hpp"
#include "propaganda/rng.hpp"

namespace {

using namespace propaganda;

std::vector<std::vector<std::string>> make_docs(std::size_t n, std::size_t vocab) {
  Rng rng(7);
  std::vector<std::vector<std::string>> docs(n);
  for (auto& d : docs) {
    const auto len = 5 + rng.below(30);
    for (std::size_t k = 0; k < len; ++k) {
      // Skewed draw so a few terms are frequent.
      const auto t = rng.below(1 + rng.below(vocab));
      d.push_back("term" + std::to_string(t));
    }
  }
  return docs;
}

void BM_FitVocab(benchmark::State& state) {
  const auto docs = make_docs(static_cast<std::size_t>(state.range(0)), 5000);
  for (auto _ : state) benchmark::DoNotOptimize(fit_vocab(docs).size());
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FitVocab)->Range(256, 8192);

void BM_TfidfTransform(benchmark::State& state) {
  const auto docs = make_docs(static_cast<std::size_t>(state.range(0)), 5000);
  const auto vocab = fit_vocab(docs);
  for (auto _ : state) benchmark::DoNotOptimize(tfidf_transform(docs, vocab).rows());
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TfidfTransform)->Range(256, 8192);

void BM_Train(benchmark::State& state) {
  const auto docs = make_docs(4096, 5000);
  const auto x = tfidf_transform(docs, fit_vocab(docs));
  std::vector<TechniqueLabel> y;
  Rng rng(3);
  for (std::size_t i = 0; i < docs.size(); ++i) y.push_back(label_from_index(rng.below(kNumLabels)));
  TrainConfig config;
  config.algorithm = state.range(0) == 0 ? Algorithm::kRidge : Algorithm::kSgdHinge;
  state.SetLabel(std::string(to_string(config.algorithm)));
  for (auto _ : state) benchmark::DoNotOptimize(train(x, y, config).weights.data());
}
BENCHMARK(BM_Train)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
