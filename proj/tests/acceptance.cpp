// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any
// fails. Criteria pin the tolerances and seeds; the desk-scale run uses the
// bundled corpus and config.
#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "featsim/align.hpp"
#include "featsim/config.hpp"
#include "featsim/corpus.hpp"
#include "featsim/explain.hpp"
#include "featsim/metrics.hpp"
#include "featsim/models.hpp"
#include "featsim/pipeline.hpp"
#include "featsim/rng.hpp"
#include "oracles.hpp"

using namespace featsim;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

// ---- shared helpers --------------------------------------------------------

double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }

Document doc_from_tokens(const std::vector<std::string>& tokens) {
  Document d;
  d.id = "acc";
  d.tokens = tokens;
  std::string text;
  for (const auto& t : tokens) text += t + " ";
  d.text = text;
  d.label = 0;
  return d;
}

// Random tiling of [0, chars) into inclusive spans with matching-length
// placeholder tokens.
Tokenization random_tiling(Rng& rng, int chars) {
  Tokenization t;
  int pos = 0;
  while (pos < chars) {
    int len = std::min(rng.uniform_int(1, 5), chars - pos);
    t.tokens.push_back(std::string(static_cast<std::size_t>(len), 'a'));
    t.spans.push_back({pos, pos + len - 1});
    pos += len;
  }
  return t;
}

// Table-driven coalition game over n placeholder types w0..w(n-1).
PredictFn table_game(int n, std::shared_ptr<std::vector<double>> table) {
  return [n, table](const Document& d) {
    std::unordered_set<std::string> present(d.tokens.begin(), d.tokens.end());
    std::uint32_t mask = 0;
    for (int j = 0; j < n; ++j)
      if (present.count("w" + std::to_string(j))) mask |= 1u << j;
    return (*table)[mask];
  };
}

std::vector<std::string> type_names(int n) {
  std::vector<std::string> names;
  for (int j = 0; j < n; ++j) names.push_back("w" + std::to_string(j));
  return names;
}

double max_abs_diff(const std::map<std::string, double>& a,
                    const std::map<std::string, double>& b) {
  double worst = 0.0;
  for (const auto& [k, v] : a) worst = std::max(worst, std::abs(v - b.at(k)));
  return worst;
}

std::map<std::string, std::map<std::string, std::string>> read_csv_rows(
    const fs::path& path, const std::vector<std::string>& key_cols) {
  std::ifstream in(path);
  std::map<std::string, std::map<std::string, std::string>> rows;
  std::string line;
  if (!std::getline(in, line)) return rows;
  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) header.push_back(cell);
  }
  while (std::getline(in, line)) {
    // The pair column never contains commas, so a plain split is safe here.
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != header.size()) continue;
    std::map<std::string, std::string> row;
    for (std::size_t i = 0; i < header.size(); ++i) row[header[i]] = cells[i];
    std::string key;
    for (const auto& kc : key_cols) key += row[kc] + "\x1f";
    rows[key] = row;
  }
  return rows;
}

// ---- criteria --------------------------------------------------------------

Outcome criterion_alignment() {
  auto started = std::chrono::steady_clock::now();
  // Worked example: dst (2,5) against src (2,3) w=0.9 and (4,6) w=0.6.
  Tokenization src;
  src.tokens = {"ab", "cde"};
  src.spans = {{2, 3}, {4, 6}};
  Tokenization dst;
  dst.tokens = {"abcd"};
  dst.spans = {{2, 5}};
  WeightVector out = align_weights(dst, src, {0.9, 0.6});
  double expected = 0.0;
  expected += 0.9 * (2.0 / 2.0);
  expected += 0.6 * (2.0 / 3.0);
  if (out.size() != 1 || out[0] != expected)
    return {false, "worked example mismatch: got " + std::to_string(out[0])};

  Rng rng(11);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    int chars = rng.uniform_int(3, 60);
    Tokenization a = random_tiling(rng, chars);
    Tokenization b = random_tiling(rng, chars);
    a.validate();
    b.validate();
    WeightVector w(a.size());
    double total = 0.0;
    for (auto& x : w) {
      x = uniform(rng, -1.0, 1.0);
      total += x;
    }
    WeightVector mapped = align_weights(b, a, w);
    double mapped_total = 0.0;
    for (double x : mapped) mapped_total += x;
    worst = std::max(worst, std::abs(mapped_total - total));
  }
  if (worst > 1e-12)
    return {false, "mass conservation worst error " + std::to_string(worst)};
  double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  if (secs > 1.0) return {false, "took " + std::to_string(secs) + " s (limit 1)"};
  std::ostringstream d;
  d << "worked example exact; mass conserved on 1000 random pairs (worst " << worst << ")";
  return {true, d.str()};
}

Outcome criterion_shapley() {
  auto started = std::chrono::steady_clock::now();
  Rng rng(2024);
  double worst = 0.0;
  for (int g = 0; g < 50; ++g) {
    int n = rng.uniform_int(1, 10);
    auto table = std::make_shared<std::vector<double>>(1u << n);
    for (auto& v : *table) v = uniform(rng, -2.0, 2.0);
    PredictFn predict = table_game(n, table);
    Document doc = doc_from_tokens(type_names(n));

    ShapConfig cfg;
    cfg.exact_threshold = 12;
    auto est = explain_kernel_shap(predict, doc, cfg);
    auto ref = exact_shapley_oracle(predict, doc);
    worst = std::max(worst, max_abs_diff(ref, est));

    // Efficiency on every game: scores sum to v(full) - v(empty).
    double total = 0.0;
    for (const auto& [k, v] : est) total += v;
    double span = predict(doc) - (*table)[0];
    worst = std::max(worst, std::abs(total - span));
  }

  // Symmetry and dummy on a dedicated 6-player game: value counts players
  // 0..4 equally (0 and 1 symmetric by construction), player 5 never matters.
  {
    int n = 6;
    auto table = std::make_shared<std::vector<double>>(1u << n);
    for (std::uint32_t m = 0; m < table->size(); ++m) {
      std::uint32_t active = m & 0x1fu;
      (*table)[m] = 1.5 * std::popcount(active) + 0.25 * ((m & 3u) == 3u);
    }
    PredictFn predict = table_game(n, table);
    Document doc = doc_from_tokens(type_names(n));
    auto est = explain_kernel_shap(predict, doc, ShapConfig{});
    double sym = std::abs(est.at("w0") - est.at("w1"));
    double dummy = std::abs(est.at("w5"));
    worst = std::max({worst, sym, dummy});
  }

  if (worst > 1e-9) return {false, "worst deviation " + std::to_string(worst)};
  double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  if (secs > 30.0) return {false, "took " + std::to_string(secs) + " s (limit 30)"};
  std::ostringstream d;
  d << "50 games (n<=10) match enumeration; axioms hold (worst " << worst << ")";
  return {true, d.str()};
}

Outcome criterion_linear_shap() {
  Rng rng(77);
  double worst = 0.0;
  for (int g = 0; g < 20; ++g) {
    int vocab_n = 10;
    std::vector<std::string> types = type_names(vocab_n);
    Vocabulary vocab(types);
    LinearModel model;
    model.bias = uniform(rng, -1.0, 1.0);
    model.weights.resize(static_cast<std::size_t>(vocab_n));
    for (auto& w : model.weights) w = uniform(rng, -1.0, 1.0);

    int n = rng.uniform_int(1, 10);
    std::vector<std::string> tokens;
    for (int j = 0; j < n; ++j) {
      int reps = rng.uniform_int(1, 3);
      for (int r = 0; r < reps; ++r) tokens.push_back(types[static_cast<std::size_t>(j)]);
    }
    Document doc = doc_from_tokens(tokens);

    auto closed = linear_shap_closed_form(model, vocab, doc, {});
    PredictFn margin = [&model, &vocab](const Document& d) {
      return model.margin(featurize(d, vocab));
    };
    auto ref = exact_shapley_oracle(margin, doc);
    worst = std::max(worst, max_abs_diff(closed, ref));
  }
  if (worst > 1e-9) return {false, "worst deviation " + std::to_string(worst)};
  std::ostringstream d;
  d << "closed form matches enumeration for 20 models (worst " << worst << ")";
  return {true, d.str()};
}

Outcome criterion_lime() {
  Rng rng(4242);
  double worst_rel = 0.0;
  for (int g = 0; g < 10; ++g) {
    int n = rng.uniform_int(2, 10);
    std::vector<std::string> types = type_names(n);
    std::map<std::string, double> coef;
    for (const auto& t : types) {
      double magnitude = uniform(rng, 0.2, 1.0);
      coef[t] = uniform(rng, 0.0, 1.0) < 0.5 ? -magnitude : magnitude;
    }
    double c0 = uniform(rng, -1.0, 1.0);
    PredictFn predict = [coef, c0](const Document& d) {
      std::unordered_set<std::string> present(d.tokens.begin(), d.tokens.end());
      double y = c0;
      for (const auto& [t, c] : coef)
        if (present.count(t)) y += c;
      return y;
    };
    LimeConfig cfg;
    cfg.n_samples = 1000;
    cfg.sparsity = 10;
    cfg.seed = 1000 + static_cast<std::uint64_t>(g);
    auto scores = explain_lime(predict, doc_from_tokens(types), cfg);
    for (const auto& [t, c] : coef)
      worst_rel = std::max(worst_rel, std::abs(scores.at(t) - c) / std::abs(c));
  }
  if (worst_rel > 0.05)
    return {false, "worst relative error " + std::to_string(worst_rel)};

  LimeConfig cfg;
  cfg.n_samples = 1000;
  cfg.seed = 9;
  auto flat = explain_lime([](const Document&) { return 0.37; },
                           doc_from_tokens(type_names(6)), cfg);
  double worst_flat = 0.0;
  for (const auto& [t, s] : flat) worst_flat = std::max(worst_flat, std::abs(s));
  if (worst_flat > 1e-6)
    return {false, "constant target leaked scores up to " + std::to_string(worst_flat)};
  std::ostringstream d;
  d << "affine recovery worst rel err " << worst_rel << "; constant target max |score| "
    << worst_flat;
  return {true, d.str()};
}

Outcome criterion_gradcheck() {
  Rng rng(31337);
  double worst = 0.0;
  for (int point = 0; point < 10; ++point) {
    int vocab_n = 12;
    int d_e = rng.uniform_int(3, 6);
    AttentionNet net;
    net.embed_dim = d_e;
    net.vocab_size = vocab_n;
    net.embeddings.resize(static_cast<std::size_t>(vocab_n * d_e));
    net.context.resize(static_cast<std::size_t>(d_e));
    net.output_weights.resize(static_cast<std::size_t>(d_e));
    for (auto& p : net.embeddings) p = uniform(rng, -0.5, 0.5);
    for (auto& p : net.context) p = uniform(rng, -0.5, 0.5);
    for (auto& p : net.output_weights) p = uniform(rng, -0.5, 0.5);
    net.output_bias = uniform(rng, -0.5, 0.5);

    int len = rng.uniform_int(3, 8);
    std::vector<int> ids;
    for (int i = 0; i < len; ++i) ids.push_back(rng.uniform_int(0, vocab_n - 1));
    int label = rng.uniform_int(0, 1);

    auto grads = attention_gradients(net, ids, label);
    const double h = 1e-6;
    auto check = [&](double* param, double analytic) {
      double save = *param;
      *param = save + h;
      double up = attention_loss(net, ids, label);
      *param = save - h;
      double down = attention_loss(net, ids, label);
      *param = save;
      double numeric = (up - down) / (2 * h);
      double scale = std::max({std::abs(analytic), std::abs(numeric), 1e-4});
      worst = std::max(worst, std::abs(analytic - numeric) / scale);
    };
    for (const auto& [tid, dvec] : grads.d_embeddings)
      for (int j = 0; j < d_e; ++j)
        check(&net.embeddings[static_cast<std::size_t>(tid * d_e + j)], dvec[static_cast<std::size_t>(j)]);
    for (int j = 0; j < d_e; ++j) check(&net.context[static_cast<std::size_t>(j)], grads.d_context[static_cast<std::size_t>(j)]);
    for (int j = 0; j < d_e; ++j)
      check(&net.output_weights[static_cast<std::size_t>(j)], grads.d_output_weights[static_cast<std::size_t>(j)]);
    check(&net.output_bias, grads.d_output_bias);
  }
  if (worst > 1e-4) return {false, "worst relative error " + std::to_string(worst)};
  std::ostringstream d;
  d << "10 random points, worst relative error " << worst;
  return {true, d.str()};
}

Outcome criterion_metric_oracles() {
  Rng rng(555);
  // Jaccard, exact agreement with the naive set implementation.
  for (int i = 0; i < 1000; ++i) {
    std::set<std::string> a, b;
    int na = rng.uniform_int(0, 12), nb = rng.uniform_int(0, 12);
    if (na == 0 && nb == 0) na = 1;
    for (int j = 0; j < na; ++j) a.insert("t" + std::to_string(rng.uniform_int(0, 19)));
    for (int j = 0; j < nb; ++j) b.insert("t" + std::to_string(rng.uniform_int(0, 19)));
    if (a.empty() && b.empty()) a.insert("t0");
    if (jaccard(a, b) != oracles::naive_jaccard(a, b))
      return {false, "jaccard deviates from the naive implementation"};
  }

  // Spearman with ties vs the counting-rank oracle.
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    int n = rng.uniform_int(3, 25);
    std::vector<double> a, b;
    for (int j = 0; j < n; ++j) {
      a.push_back(static_cast<double>(rng.uniform_int(0, 6)));
      b.push_back(uniform(rng, -1.0, 1.0));
    }
    if (*std::max_element(a.begin(), a.end()) == *std::min_element(a.begin(), a.end()))
      a[0] += 1.0;
    worst = std::max(worst, std::abs(spearman(a, b) - oracles::spearman_reference(a, b)));
  }
  if (worst > 1e-12) return {false, "spearman worst deviation " + std::to_string(worst)};

  // JS distance vs direct divergence summation.
  double worst_js = 0.0;
  for (int i = 0; i < 100; ++i) {
    std::map<std::string, double> p, q;
    int n = rng.uniform_int(1, 8);
    for (int j = 0; j < n; ++j) {
      std::string k = "k" + std::to_string(rng.uniform_int(0, 9));
      if (uniform(rng, 0.0, 1.0) < 0.8) p[k] = uniform(rng, 0.01, 1.0);
      if (uniform(rng, 0.0, 1.0) < 0.8) q[k] = uniform(rng, 0.01, 1.0);
    }
    if (p.empty()) p["k0"] = 1.0;
    if (q.empty()) q["k1"] = 1.0;
    worst_js = std::max(worst_js,
                        std::abs(js_distance(p, q) - oracles::js_distance_reference(p, q)));
  }
  if (worst_js > 1e-12) return {false, "js worst deviation " + std::to_string(worst_js)};

  // Uniform pools hit log2(n) exactly (within fp).
  double worst_ent = 0.0;
  for (int n : {2, 4, 7, 16, 100}) {
    std::vector<std::vector<std::string>> selections;
    for (int j = 0; j < n; ++j) selections.push_back({"u" + std::to_string(j)});
    worst_ent = std::max(worst_ent,
                         std::abs(selection_entropy(selections) - std::log2(static_cast<double>(n))));
  }
  if (worst_ent > 1e-12) return {false, "uniform entropy off by " + std::to_string(worst_ent)};

  std::ostringstream d;
  d << "jaccard exact on 1000 pairs; spearman worst " << worst << "; js worst " << worst_js
    << "; uniform entropy worst " << worst_ent;
  return {true, d.str()};
}

Outcome criterion_random_baseline() {
  const int n = 100, k = 10, draws = 100;
  // Expected overlap k^2/n = 1 shared type, so Jaccard 1/(2k - 1) = 1/19.
  const double target = 1.0 / 19.0;

  // Exact stderr of a 100-draw mean from the hypergeometric law of |A n B|.
  double ej = 0.0, ej2 = 0.0;
  for (int m = 0; m <= k; ++m) {
    double logp = oracles::log_choose(k, m) + oracles::log_choose(n - k, k - m) -
                  oracles::log_choose(n, k);
    double pj = std::exp(logp);
    double jac = static_cast<double>(m) / (2.0 * k - m);
    ej += pj * jac;
    ej2 += pj * jac * jac;
  }
  double se = std::sqrt((ej2 - ej * ej) / draws);

  std::ostringstream seen;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    double value = random_baseline_jaccard(n, k, draws, seed);
    seen << (seed > 1 ? ", " : "") << value;
    if (std::abs(value - target) > 3 * se) {
      std::ostringstream d;
      d << "seed " << seed << " gave " << value << ", outside " << target << " +- 3*" << se;
      return {false, d.str()};
    }
  }
  std::ostringstream d;
  d << "5 seeds within 3 SE (" << se << ") of " << target << ": " << seen.str();
  return {true, d.str()};
}

Outcome criterion_fixture() {
  fs::path path = fs::path(FEATSIM_REPO_ROOT) / "data/fixtures/review_top10_sets.json";
  std::ifstream in(path);
  if (!in) return {false, "cannot open " + path.string()};
  json j;
  in >> j;
  std::set<std::string> builtin_set, lime_set;
  for (const auto& t : j.at("svm_l2_builtin")) builtin_set.insert(t.get<std::string>());
  for (const auto& t : j.at("svm_l2_lime")) lime_set.insert(t.get<std::string>());
  double value = jaccard(builtin_set, lime_set);
  if (value != 1.0 / 3.0) {
    std::ostringstream d;
    d << "jaccard is " << value << ", expected exactly 1/3";
    return {false, d.str()};
  }
  return {true, "top-10 overlap is exactly 1/3 (5 shared of 15 distinct)"};
}

// Shared by criteria 9 and 10.
struct DeskRun {
  RunConfig config;
  fs::path out_dir;
  bool ran = false;
  std::string error;
};
DeskRun desk;

Outcome criterion_desk_run() {
  auto started = std::chrono::steady_clock::now();
  try {
    desk.config = load_config(fs::path(FEATSIM_REPO_ROOT) / "data/configs/acceptance.json");
    desk.config.corpus = fs::path(FEATSIM_REPO_ROOT) / "data/reviews.jsonl";
    desk.out_dir = fs::temp_directory_path() / "featsim_acceptance_run";
    fs::remove_all(desk.out_dir);
    desk.config.out_dir = desk.out_dir;
    run_all(desk.config);
    desk.ran = true;
  } catch (const std::exception& e) {
    desk.error = e.what();
    return {false, std::string("pipeline failed: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  if (secs > 600.0) return {false, "run took " + std::to_string(secs) + " s (limit 600)"};

  auto acc = read_csv_rows(desk.out_dir / "accuracy.csv", {"model", "split"});
  auto acc_of = [&](const std::string& model) {
    return std::stod(acc.at(model + "\x1f" + "test" + "\x1f").at("accuracy"));
  };
  double majority = acc_of("majority");
  std::ostringstream d;
  for (const std::string& model : {"svm_l2", "svm_l1", "xgb", "attn"}) {
    double a = acc_of(model);
    if (a < majority + 0.05) {
      std::ostringstream f;
      f << model << " test accuracy " << a << " under majority+5pts (" << majority + 0.05 << ")";
      return {false, f.str()};
    }
  }
  d << "accuracies beat majority+5pts";

  auto sim = read_csv_rows(desk.out_dir / "similarity_vs_k.csv", {"pair", "k"});
  auto sim_at = [&](const std::string& pair) {
    return std::stod(sim.at(pair + "\x1f" + "10" + "\x1f").at("mean"));
  };
  double builtin_l2_l1 = sim_at("svm_l1×builtin|svm_l2×builtin");
  double builtin_l2_attn = sim_at("attn×builtin|svm_l2×builtin");
  double lime_l2_attn = sim_at("attn×lime|svm_l2×lime");
  if (!(builtin_l2_l1 > builtin_l2_attn)) {
    std::ostringstream f;
    f << "builtin J(l2,l1)=" << builtin_l2_l1 << " not above builtin J(l2,attn)="
      << builtin_l2_attn;
    return {false, f.str()};
  }
  d << "; builtin J(l2,l1) " << builtin_l2_l1 << " > J(l2,attn) " << builtin_l2_attn;
  if (!(lime_l2_attn >= builtin_l2_attn)) {
    std::ostringstream f;
    f << "lime J(l2,attn)=" << lime_l2_attn << " below builtin " << builtin_l2_attn;
    return {false, f.str()};
  }
  d << "; lime J(l2,attn) " << lime_l2_attn << " >= builtin";

  auto ent = read_csv_rows(desk.out_dir / "entropy.csv", {"model", "method", "k"});
  auto ent_at = [&](const std::string& model) {
    return std::stod(ent.at(model + "\x1f" + "builtin" + "\x1f" + "10" + "\x1f").at("entropy"));
  };
  double attn_entropy = ent_at("attn");
  double tree_entropy = ent_at("xgb");
  if (!(attn_entropy >= tree_entropy)) {
    std::ostringstream f;
    f << "entropy attn " << attn_entropy << " below tree " << tree_entropy;
    return {false, f.str()};
  }
  d << "; entropy attn " << attn_entropy << " >= tree " << tree_entropy;
  d << " (" << static_cast<int>(secs) << " s)";
  return {true, d.str()};
}

Outcome criterion_determinism() {
  if (!desk.ran) return {false, "desk-scale run unavailable: " + desk.error};

  std::map<std::string, std::string> first;
  for (const auto& entry : fs::recursive_directory_iterator(desk.out_dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".csv") continue;
    std::ifstream in(entry.path(), std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    first[entry.path().lexically_relative(desk.out_dir).string()] = buf.str();
  }
  if (first.empty()) return {false, "no csv artifacts found"};

  try {
    run_all(desk.config);
  } catch (const std::exception& e) {
    return {false, std::string("rerun failed: ") + e.what()};
  }
  for (const auto& [name, bytes] : first) {
    std::ifstream in(desk.out_dir / name, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (buf.str() != bytes) return {false, name + " changed between reruns"};
  }
  std::ostringstream d;
  d << first.size() << " csv artifacts byte-identical across reruns";
  return {true, d.str()};
}

}  // namespace

int main() {
  struct Row {
    const char* label;
    std::function<Outcome()> run;
  };
  const std::vector<Row> rows = {
      {"1 alignment exactness and mass conservation", criterion_alignment},
      {"2 kernel shap vs exact enumeration", criterion_shapley},
      {"3 linear shap closed form", criterion_linear_shap},
      {"4 lime affine recovery", criterion_lime},
      {"5 attention gradient check", criterion_gradcheck},
      {"6 metric oracles", criterion_metric_oracles},
      {"7 random jaccard baseline", criterion_random_baseline},
      {"8 frozen top-10 fixture", criterion_fixture},
      {"9 desk-scale trend run", criterion_desk_run},
      {"10 end-to-end determinism", criterion_determinism},
  };

  int failures = 0;
  for (const auto& row : rows) {
    auto started = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = row.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    std::printf("%s  %s: %s [%.2f s]\n", outcome.pass ? "PASS" : "FAIL", row.label,
                outcome.detail.c_str(), secs);
    std::fflush(stdout);
    if (!outcome.pass) ++failures;
  }
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
