// Apache License, Version 2.0, refer to LICENSE.txt
//
// Microbenchmarks for the cost claims that matter here: one Dirichlet
// iteration is O(W) and ignores corpus size, while one deleted-estimation
// likelihood pass is O(N) in the corpus.
#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "lmsmooth/counts.hpp"
#include "lmsmooth/deleted_estimation.hpp"
#include "lmsmooth/dirichlet.hpp"

using namespace lmsmooth;

namespace {

std::uint64_t splitmix(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::vector<Sentence> synthetic_corpus(std::size_t vocab, std::size_t tokens) {
  std::uint64_t state = 0x5eed;
  std::vector<Sentence> corpus;
  std::size_t total = 0;
  while (total < tokens) {
    Sentence s;
    s.emplace_back(kBosToken);
    std::size_t len = 4 + splitmix(state) % 12;
    for (std::size_t y = 0; y < len; ++y) {
      char buf[16];
      std::snprintf(buf, sizeof(buf), "w%05llu",
                    static_cast<unsigned long long>(splitmix(state) % vocab));
      s.emplace_back(buf);
    }
    s.emplace_back(kEosToken);
    total += s.size();
    corpus.push_back(std::move(s));
  }
  return corpus;
}

void BM_CountBlock(benchmark::State& state) {
  auto corpus = synthetic_corpus(2000, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto table = count_block(corpus);
    benchmark::DoNotOptimize(table.total_tokens());
  }
}
BENCHMARK(BM_CountBlock)->Arg(20000)->Arg(40000)->Arg(80000);

// One fixed-point iteration (K(alpha) + u solve) at fixed vocabulary size;
// flat across corpus sizes once the statistics are precomputed.
void BM_DirichletIteration(benchmark::State& state) {
  auto corpus = synthetic_corpus(2000, static_cast<std::size_t>(state.range(0)));
  auto stats = dirichlet_stats(count_block(corpus));
  double alpha = 10.0;
  for (auto _ : state) {
    double k = k_alpha(alpha, stats.fj_histogram);
    auto result = solve_u(k, stats);
    benchmark::DoNotOptimize(result.u.data());
  }
}
BENCHMARK(BM_DirichletIteration)->Arg(20000)->Arg(40000)->Arg(80000);

// One likelihood-and-derivative pass over the held-out terms; scales with
// the corpus.
void BM_DeletedEstimationPass(benchmark::State& state) {
  auto corpus = synthetic_corpus(2000, static_cast<std::size_t>(state.range(0)));
  auto blocks = split_blocks(corpus, 3);
  std::vector<CountTable> tables;
  CountTable total;
  for (const auto& b : blocks) tables.push_back(count_block(b));
  for (const auto& t : tables) total = merge_counts(total, t);
  std::vector<FreqView> views;
  for (const auto& t : tables) views.push_back(freqs(leave_one_out(total, t)));
  std::vector<HeldOutBlock> held_out;
  for (std::size_t k = 0; k < blocks.size(); ++k) held_out.push_back({&blocks[k], &views[k]});

  LambdaBuckets buckets{15, 0.03};
  auto built = build_terms(held_out, buckets);
  std::vector<double> lambdas(15, 0.4);
  for (auto _ : state) {
    auto out = loglik_and_deriv(built.terms, lambdas, buckets.r);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_DeletedEstimationPass)->Arg(20000)->Arg(40000)->Arg(80000);

}  // namespace

BENCHMARK_MAIN();
