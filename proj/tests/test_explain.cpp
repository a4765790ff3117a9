#include <doctest.h>

#include <cmath>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "featsim/corpus.hpp"
#include "featsim/explain.hpp"
#include "featsim/models.hpp"
#include "featsim/rng.hpp"

using namespace featsim;

namespace {

Document doc_with_types(int n) {
  Document d;
  d.id = "g" + std::to_string(n);
  for (int i = 0; i < n; ++i) d.tokens.push_back("t" + std::to_string(i));
  return d;
}

// Deterministic non-additive predictor: singleton weights plus pairwise
// interactions over the set of present types.
PredictFn interaction_predictor(int n, std::uint64_t seed) {
  auto w = std::make_shared<std::vector<double>>();
  auto u = std::make_shared<std::vector<double>>();
  Rng rng(seed);
  for (int i = 0; i < n; ++i) w->push_back(rng.uniform() * 2 - 1);
  for (int i = 0; i < n * n; ++i) u->push_back((rng.uniform() * 2 - 1) * 0.5);
  return [n, w, u](const Document& d) {
    std::vector<int> present;
    std::set<std::string> toks(d.tokens.begin(), d.tokens.end());
    for (int i = 0; i < n; ++i)
      if (toks.count("t" + std::to_string(i))) present.push_back(i);
    double v = 0.25;
    for (std::size_t a = 0; a < present.size(); ++a) {
      v += (*w)[static_cast<std::size_t>(present[a])];
      for (std::size_t b = a + 1; b < present.size(); ++b)
        v += (*u)[static_cast<std::size_t>(present[a] * n + present[b])];
    }
    return v;
  };
}

}  // namespace

TEST_CASE("unique_types keeps first-occurrence order") {
  Document d;
  d.tokens = {"b", "a", "b", "c", "a"};
  CHECK(unique_types(d) == std::vector<std::string>{"b", "a", "c"});
}

TEST_CASE("shapley enumeration axioms") {
  SUBCASE("additive games return their own coefficients") {
    std::vector<double> b = {0.5, -1.25, 2.0, 0.0, 0.3};
    auto phi = shapley_enumeration(5, [&](std::uint32_t mask) {
      double v = 7.0;  // grand constant cancels
      for (int j = 0; j < 5; ++j)
        if (mask & (1u << j)) v += b[static_cast<std::size_t>(j)];
      return v;
    });
    for (int j = 0; j < 5; ++j)
      CHECK(phi[static_cast<std::size_t>(j)] ==
            doctest::Approx(b[static_cast<std::size_t>(j)]).epsilon(1e-12));
  }

  SUBCASE("symmetric players earn the same value") {
    // v = 1 if at least two players present: all players interchangeable
    auto phi = shapley_enumeration(4, [](std::uint32_t mask) {
      return std::popcount(mask) >= 2 ? 1.0 : 0.0;
    });
    for (int j = 1; j < 4; ++j) CHECK(phi[static_cast<std::size_t>(j)] == doctest::Approx(phi[0]).epsilon(1e-12));
  }

  SUBCASE("a dummy player earns zero") {
    // player 2 never changes the value
    auto phi = shapley_enumeration(3, [](std::uint32_t mask) {
      return static_cast<double>(std::popcount(mask & 0b011u));
    });
    CHECK(phi[2] == doctest::Approx(0.0).epsilon(1e-12));
  }

  SUBCASE("efficiency on a random game") {
    Rng rng(77);
    std::vector<double> table(1u << 6);
    for (auto& v : table) v = rng.uniform() * 4 - 2;
    auto phi = shapley_enumeration(6, [&](std::uint32_t mask) { return table[mask]; });
    double sum = 0;
    for (double p : phi) sum += p;
    CHECK(sum == doctest::Approx(table[(1u << 6) - 1] - table[0]).epsilon(1e-12));
  }

  SUBCASE("limits") {
    CHECK_THROWS(shapley_enumeration(16, [](std::uint32_t) { return 0.0; }));
    CHECK_THROWS(shapley_enumeration(0, [](std::uint32_t) { return 0.0; }));
  }
}

TEST_CASE("kernel shap in exact mode equals full enumeration") {
  for (int n : {2, 3, 5, 8}) {
    auto doc = doc_with_types(n);
    auto predict = interaction_predictor(n, static_cast<std::uint64_t>(n) * 101);
    auto oracle = exact_shapley_oracle(predict, doc);
    ShapConfig cfg;
    auto est = explain_kernel_shap(predict, doc, cfg);
    REQUIRE(est.size() == oracle.size());
    for (auto& [type, phi] : oracle)
      CHECK(est.at(type) == doctest::Approx(phi).epsilon(1e-9));
  }
}

TEST_CASE("kernel shap with one type is the full effect") {
  Document d;
  d.tokens = {"only", "only"};
  auto predict = [](const Document& doc) { return doc.tokens.empty() ? 0.2 : 0.9; };
  auto scores = explain_kernel_shap(predict, d, ShapConfig{});
  REQUIRE(scores.size() == 1);
  CHECK(scores.at("only") == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("sampled kernel shap converges toward the exact values") {
  const int n = 8;
  auto doc = doc_with_types(n);
  auto predict = interaction_predictor(n, 4242);
  auto oracle = exact_shapley_oracle(predict, doc);
  ShapConfig cfg;
  cfg.exact_threshold = 3;  // force the sampled path
  cfg.n_coalitions = 20000;
  cfg.seed = 31;
  auto est = explain_kernel_shap(predict, doc, cfg);
  for (auto& [type, phi] : oracle) CHECK(std::abs(est.at(type) - phi) < 0.02);

  auto again = explain_kernel_shap(predict, doc, cfg);
  CHECK(again == est);
}

TEST_CASE("kernel shap rejects unusable inputs") {
  Document empty;
  CHECK_THROWS(explain_kernel_shap([](const Document&) { return 0.0; }, empty, ShapConfig{}));
  auto big = doc_with_types(31);
  CHECK_THROWS(explain_kernel_shap([](const Document&) { return 0.0; }, big, ShapConfig{}));
}

TEST_CASE("linear closed form equals the removal-game Shapley values") {
  // vocabulary of 6 types; the document repeats tokens so counts matter
  std::vector<std::string> types;
  for (int i = 0; i < 6; ++i) types.push_back("t" + std::to_string(i));
  auto vocab = Vocabulary(types);
  LinearModel model;
  Rng rng(15);
  for (int i = 0; i < 6; ++i) model.weights.push_back(rng.uniform() * 2 - 1);
  model.bias = 0.4;

  Document d;
  d.tokens = {"t0", "t2", "t0", "t4", "t2", "t0", "zzz-oov"};

  auto closed = linear_shap_closed_form(model, vocab, d, {});
  CHECK(closed.size() == 3);  // t0, t2, t4; the out-of-vocabulary token has no weight
  CHECK(closed.at("t0") == doctest::Approx(3.0 * model.weights[0]).epsilon(1e-12));

  PredictFn margin_fn = [&](const Document& doc) { return model.margin(featurize(doc, vocab)); };
  auto oracle = exact_shapley_oracle(margin_fn, d);
  for (auto& [type, phi] : closed) CHECK(oracle.at(type) == doctest::Approx(phi).epsilon(1e-12));
  CHECK(oracle.at("zzz-oov") == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("linear closed form with a nonzero background") {
  std::vector<std::string> types = {"a", "b", "c"};
  auto vocab = Vocabulary(types);
  LinearModel model;
  model.weights = {0.8, -0.5, 0.3};
  model.bias = -0.2;
  std::vector<double> background = {0.4, 1.0, -0.3};

  Document d;
  d.tokens = {"a", "b", "b"};
  auto closed = linear_shap_closed_form(model, vocab, d, background);
  CHECK(closed.at("a") == doctest::Approx(0.8 * (1 - 0.4)).epsilon(1e-12));
  CHECK(closed.at("b") == doctest::Approx(-0.5 * (2 - 1.0)).epsilon(1e-12));
  CHECK(closed.count("c") == 0);

  // the same game phrased over bitmasks: absent players sit at the background
  std::vector<int> ids = {0, 1};
  std::vector<double> x = {1.0, 2.0};
  auto phi = shapley_enumeration(2, [&](std::uint32_t mask) {
    double v = model.bias;
    for (int j = 0; j < 2; ++j) {
      double xj = (mask & (1u << j)) ? x[static_cast<std::size_t>(j)]
                                     : background[static_cast<std::size_t>(ids[static_cast<std::size_t>(j)])];
      v += model.weights[static_cast<std::size_t>(ids[static_cast<std::size_t>(j)])] * xj;
    }
    // player set excludes c, whose background contribution is constant
    return v + model.weights[2] * background[2];
  });
  CHECK(closed.at("a") == doctest::Approx(phi[0]).epsilon(1e-12));
  CHECK(closed.at("b") == doctest::Approx(phi[1]).epsilon(1e-12));
}

TEST_CASE("lime recovers an affine function of type presence") {
  Document d;
  d.tokens = {"alpha", "beta", "gamma", "delta", "beta"};
  const std::map<std::string, double> coef = {
      {"alpha", 0.4}, {"beta", -0.25}, {"gamma", 0.1}, {"delta", 0.0}};
  PredictFn predict = [&](const Document& doc) {
    std::set<std::string> present(doc.tokens.begin(), doc.tokens.end());
    double v = 0.3;
    for (auto& [t, c] : coef)
      if (present.count(t)) v += c;
    return v;
  };

  LimeConfig cfg;
  cfg.n_samples = 1000;
  cfg.sparsity = 4;
  cfg.seed = 100;
  auto scores = explain_lime(predict, d, cfg);
  REQUIRE(scores.size() == 4);
  for (auto& [t, c] : coef) {
    if (c != 0.0)
      CHECK(scores.at(t) == doctest::Approx(c).epsilon(0.05));
    else
      CHECK(std::abs(scores.at(t)) < 1e-6);
  }
}

TEST_CASE("lime on a constant function is zero everywhere") {
  Document d;
  d.tokens = {"a", "b", "c", "d", "e"};
  LimeConfig cfg;
  cfg.n_samples = 600;
  cfg.sparsity = 5;
  cfg.seed = 8;
  auto scores = explain_lime([](const Document&) { return 0.42; }, d, cfg);
  REQUIRE(scores.size() == 5);
  for (auto& [t, v] : scores) CHECK(std::abs(v) < 1e-6);
}

TEST_CASE("lime sparsity caps the nonzero scores but keys every type") {
  Document d;
  d.tokens = {"a", "b", "c", "d", "e", "f"};
  PredictFn predict = [](const Document& doc) {
    std::set<std::string> present(doc.tokens.begin(), doc.tokens.end());
    return 0.2 + 0.5 * present.count("a") - 0.3 * present.count("b") + 0.15 * present.count("c");
  };
  LimeConfig cfg;
  cfg.n_samples = 800;
  cfg.sparsity = 2;
  cfg.seed = 21;
  auto scores = explain_lime(predict, d, cfg);
  REQUIRE(scores.size() == 6);
  int nonzero = 0;
  for (auto& [t, v] : scores) nonzero += v != 0.0;
  CHECK(nonzero <= 2);
  // the two strongest effects win the forward selection
  CHECK(scores.at("a") != 0.0);
  CHECK(scores.at("b") != 0.0);
}

TEST_CASE("lime is deterministic per seed") {
  auto d = doc_with_types(7);
  auto predict = interaction_predictor(7, 606);
  LimeConfig cfg;
  cfg.n_samples = 400;
  cfg.seed = 55;
  auto a = explain_lime(predict, d, cfg);
  auto b = explain_lime(predict, d, cfg);
  CHECK(a == b);
  cfg.seed = 56;
  auto c = explain_lime(predict, d, cfg);
  CHECK(a != c);
}

TEST_CASE("lime input validation") {
  Document empty;
  CHECK_THROWS(explain_lime([](const Document&) { return 0.0; }, empty, LimeConfig{}));
  auto d = doc_with_types(5);
  LimeConfig tiny;
  tiny.n_samples = 3;
  CHECK_THROWS(explain_lime([](const Document&) { return 0.0; }, d, tiny));
}

TEST_CASE("explainers agree with the oracle on a trained model") {
  std::vector<Document> docs;
  for (int i = 0; i < 8; ++i) {
    Document p;
    p.id = "p" + std::to_string(i);
    p.tokens = {"the", "food", "good", i % 2 ? "fresh" : "tasty"};
    p.label = 1;
    docs.push_back(p);
    Document n;
    n.id = "n" + std::to_string(i);
    n.tokens = {"the", "food", "bad", i % 2 ? "stale" : "bland"};
    n.label = 0;
    docs.push_back(n);
  }
  auto vocab = std::make_shared<Vocabulary>(build_vocabulary(docs, 1));
  TreeHyper hyper;
  hyper.n_trees = 6;
  hyper.max_depth = 2;
  auto tm = TrainedModel("xgb", vocab, train_trees(docs, *vocab, hyper));
  auto predict = tm.predictor();

  auto oracle = exact_shapley_oracle(predict, docs[0]);
  auto est = explain_kernel_shap(predict, docs[0], ShapConfig{});
  for (auto& [type, phi] : oracle) CHECK(est.at(type) == doctest::Approx(phi).epsilon(1e-9));
}
