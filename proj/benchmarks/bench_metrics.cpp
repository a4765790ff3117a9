#include <benchmark/benchmark.h>

#include <map>
#include <set>
#include <string>
#include <vector>

#include "featsim/metrics.hpp"
#include "featsim/rng.hpp"

namespace {

using namespace featsim;

std::map<std::string, double> random_scores(Rng& rng, int n) {
  std::map<std::string, double> scores;
  for (int j = 0; j < n; ++j)
    scores["t" + std::to_string(j)] = rng.uniform() - 0.5;
  return scores;
}

void BM_top_k(benchmark::State& state) {
  Rng rng(23);
  auto scores = random_scores(rng, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto top = top_k(scores, 10);
    benchmark::DoNotOptimize(top);
  }
}

void BM_jaccard(benchmark::State& state) {
  Rng rng(23);
  std::set<std::string> a, b;
  for (int j = 0; j < state.range(0); ++j) {
    a.insert("t" + std::to_string(rng.bounded(2000)));
    b.insert("t" + std::to_string(rng.bounded(2000)));
  }
  for (auto _ : state) benchmark::DoNotOptimize(jaccard(a, b));
}

void BM_spearman(benchmark::State& state) {
  Rng rng(23);
  std::vector<double> a, b;
  for (int j = 0; j < state.range(0); ++j) {
    a.push_back(static_cast<double>(rng.bounded(32)));  // tied runs included
    b.push_back(rng.uniform());
  }
  for (auto _ : state) benchmark::DoNotOptimize(spearman(a, b));
}

void BM_selection_entropy(benchmark::State& state) {
  Rng rng(23);
  std::vector<std::vector<std::string>> selections(
      static_cast<std::size_t>(state.range(0)));
  for (auto& sel : selections)
    for (int j = 0; j < 10; ++j)
      sel.push_back("t" + std::to_string(rng.bounded(500)));
  for (auto _ : state) benchmark::DoNotOptimize(selection_entropy(selections));
}

}  // namespace

BENCHMARK(BM_top_k)->Arg(30)->Arg(300)->Arg(3000);
BENCHMARK(BM_jaccard)->Arg(10)->Arg(100)->Arg(1000);
BENCHMARK(BM_spearman)->Arg(30)->Arg(300)->Arg(3000);
BENCHMARK(BM_selection_entropy)->Arg(100)->Arg(1000);
