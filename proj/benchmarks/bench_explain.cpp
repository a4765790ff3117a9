#include <benchmark/benchmark.h>

#include <memory>
#include <string>
#include <vector>

#include "featsim/corpus.hpp"
#include "featsim/explain.hpp"
#include "featsim/models.hpp"
#include "featsim/rng.hpp"

namespace {

using namespace featsim;

// A linear margin over n synthetic types; cheap enough that the benchmark
// measures the explainers rather than the model.
struct Fixture {
  std::shared_ptr<Vocabulary> vocab;
  LinearModel model;
  Document doc;
  PredictFn predict;

  explicit Fixture(int n_types) {
    Rng rng(17);
    std::vector<std::string> types;
    for (int j = 0; j < n_types; ++j) types.push_back("w" + std::to_string(j));
    vocab = std::make_shared<Vocabulary>(types);
    model.weights.resize(static_cast<std::size_t>(n_types));
    for (auto& w : model.weights) w = rng.uniform() - 0.5;
    model.bias = 0.1;
    doc.id = "bench";
    doc.tokens = types;
    doc.label = 1;
    auto m = model;
    auto v = vocab;
    predict = [m, v](const Document& d) { return m.margin(featurize(d, *v)); };
  }
};

void BM_lime(benchmark::State& state) {
  Fixture fx(static_cast<int>(state.range(0)));
  LimeConfig cfg;
  cfg.n_samples = static_cast<int>(state.range(1));
  cfg.seed = 5;
  for (auto _ : state) {
    auto scores = explain_lime(fx.predict, fx.doc, cfg);
    benchmark::DoNotOptimize(scores);
  }
}

void BM_kernel_shap_exact(benchmark::State& state) {
  Fixture fx(static_cast<int>(state.range(0)));
  ShapConfig cfg;
  cfg.exact_threshold = 12;
  cfg.seed = 5;
  for (auto _ : state) {
    auto scores = explain_kernel_shap(fx.predict, fx.doc, cfg);
    benchmark::DoNotOptimize(scores);
  }
}

void BM_kernel_shap_sampled(benchmark::State& state) {
  Fixture fx(static_cast<int>(state.range(0)));
  ShapConfig cfg;
  cfg.exact_threshold = 8;  // force the sampled path
  cfg.n_coalitions = static_cast<int>(state.range(1));
  cfg.seed = 5;
  for (auto _ : state) {
    auto scores = explain_kernel_shap(fx.predict, fx.doc, cfg);
    benchmark::DoNotOptimize(scores);
  }
}

}  // namespace

BENCHMARK(BM_lime)->Args({10, 500})->Args({20, 1000})->Args({30, 4000});
BENCHMARK(BM_kernel_shap_exact)->Arg(8)->Arg(10)->Arg(12);
BENCHMARK(BM_kernel_shap_sampled)->Args({20, 1024})->Args({30, 2048});
