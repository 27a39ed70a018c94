#include <benchmark/benchmark.h>

#include <random>

#include "ftsim/distributed.hpp"
#include "ftsim/engine.hpp"
#include "synthetic.hpp"

using namespace ftsim;

namespace {

synth::FuzzyPair corpus_of_scale(std::size_t docs, std::size_t vocab) {
  std::mt19937_64 rng(4242);
  return synth::random_fuzzy_pair(
      rng, {.min_docs = docs, .max_docs = docs, .min_sents = 8, .max_sents = 8,
            .min_words = 10, .max_words = 10, .vocab = vocab});
}

}  // namespace

static void BM_DocUpdate(benchmark::State &state) {
  auto [sdf, wsf] = corpus_of_scale(state.range(0), 400);
  auto s2 = identity_similarity(sdf.row_labels);
  for (auto _ : state) benchmark::DoNotOptimize(doc_update(sdf, s2));
}
BENCHMARK(BM_DocUpdate)->Arg(10)->Arg(20)->Arg(40);

static void BM_WordUpdate(benchmark::State &state) {
  auto [sdf, wsf] = corpus_of_scale(state.range(0), 400);
  auto s2 = identity_similarity(wsf.col_labels);
  for (auto _ : state) benchmark::DoNotOptimize(word_update(wsf, s2));
}
BENCHMARK(BM_WordUpdate)->Arg(10)->Arg(20)->Arg(40);

static void BM_Iterate(benchmark::State &state) {
  auto [sdf, wsf] = corpus_of_scale(20, 400);
  TriadicState st{identity_similarity(sdf.col_labels),
                  identity_similarity(sdf.row_labels),
                  identity_similarity(wsf.row_labels), 0, {}};
  for (auto _ : state) benchmark::DoNotOptimize(ft_sim_iterate(st, sdf, wsf, state.range(0)));
}
BENCHMARK(BM_Iterate)->Arg(1)->Arg(4);

static void BM_SplitRun(benchmark::State &state) {
  auto [sdf, wsf] = corpus_of_scale(30, 800);
  RunConfig cfg{.max_iterations = 2, .epsilon = 0.0};
  for (auto _ : state) {
    auto out = run_splitting(sdf, wsf,
                             {.splits = static_cast<std::size_t>(state.range(0)), .seed = 1},
                             cfg);
    benchmark::DoNotOptimize(out.first.matrix.values.data());
  }
}
BENCHMARK(BM_SplitRun)->Arg(1)->Arg(2)->Arg(4);

BENCHMARK_MAIN();
