#include <benchmark/benchmark.h>

#include <string>

#include "featsim/align.hpp"
#include "featsim/rng.hpp"

namespace {

featsim::Tokenization random_tiling(featsim::Rng& rng, int total_chars) {
  featsim::Tokenization t;
  int offset = 0;
  while (offset < total_chars) {
    int len = 1 + static_cast<int>(rng.bounded(
                      static_cast<std::uint64_t>(std::min(5, total_chars - offset))));
    t.spans.push_back({offset, offset + len - 1});
    t.tokens.push_back(std::string(static_cast<std::size_t>(len), 'x'));
    offset += len;
  }
  return t;
}

void BM_align_weights(benchmark::State& state) {
  featsim::Rng rng(3);
  int chars = static_cast<int>(state.range(0));
  auto src = random_tiling(rng, chars);
  auto dst = random_tiling(rng, chars);
  featsim::WeightVector w(src.size(), 1.0);
  for (auto _ : state) {
    auto out = featsim::align_weights(dst, src, w);
    benchmark::DoNotOptimize(out);
  }
}

}  // namespace

BENCHMARK(BM_align_weights)->Arg(64)->Arg(512)->Arg(4096);
