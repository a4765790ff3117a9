#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "featsim/explain.hpp"
#include "featsim/rng.hpp"

namespace featsim {

namespace {

struct Samples {
  std::vector<std::vector<char>> kept;  // n_samples x n_types, 1 = type kept
  std::vector<double> target;           // model prediction on the perturbed text
  std::vector<double> weight;           // proximity kernel
};

Samples draw_samples(const PredictFn& predict, const Document& doc,
                     const std::vector<std::string>& players, const LimeConfig& config) {
  const int n = static_cast<int>(players.size());
  const double sigma = config.kernel_width > 0 ? config.kernel_width : 0.75 * std::sqrt(n);
  Rng rng(config.seed);
  Samples s;
  s.kept.reserve(static_cast<std::size_t>(config.n_samples));
  for (int t = 0; t < config.n_samples; ++t) {
    int removals = rng.uniform_int(0, n);
    auto removed = rng.sample_without_replacement(n, removals);
    std::vector<char> kept(static_cast<std::size_t>(n), 1);
    std::unordered_set<std::string> drop;
    for (int idx : removed) {
      kept[static_cast<std::size_t>(idx)] = 0;
      drop.insert(players[static_cast<std::size_t>(idx)]);
    }
    // cosine distance between the all-ones vector and the mask
    int kept_count = n - removals;
    double dist = kept_count == 0 ? 1.0 : 1.0 - std::sqrt(static_cast<double>(kept_count) / n);
    s.weight.push_back(std::exp(-dist * dist / (sigma * sigma)));
    s.target.push_back(predict(remove_types(doc, drop)));
    s.kept.push_back(std::move(kept));
  }
  return s;
}

// Weighted least squares of target on [1, columns(features)], ridge penalty
// on the non-intercept coefficients only. Returns the residual sum of squares
// and writes the coefficients (intercept first).
double weighted_fit(const Samples& s, const std::vector<int>& features, double ridge,
                    Eigen::VectorXd* coefficients) {
  const int m = static_cast<int>(s.kept.size());
  const int k = static_cast<int>(features.size());
  Eigen::MatrixXd x(m, k + 1);
  Eigen::VectorXd y(m);
  Eigen::VectorXd sw(m);
  for (int r = 0; r < m; ++r) {
    sw(r) = std::sqrt(s.weight[static_cast<std::size_t>(r)]);
    x(r, 0) = sw(r);
    for (int c = 0; c < k; ++c)
      x(r, c + 1) =
          sw(r) * s.kept[static_cast<std::size_t>(r)][static_cast<std::size_t>(features[static_cast<std::size_t>(c)])];
    y(r) = sw(r) * s.target[static_cast<std::size_t>(r)];
  }
  Eigen::VectorXd beta;
  if (ridge > 0) {
    Eigen::MatrixXd gram = x.transpose() * x;
    for (int c = 1; c <= k; ++c) gram(c, c) += ridge;
    beta = gram.ldlt().solve(x.transpose() * y);
  } else {
    beta = x.colPivHouseholderQr().solve(y);
  }
  if (coefficients) *coefficients = beta;
  return (x * beta - y).squaredNorm();
}

}  // namespace

std::map<std::string, double> explain_lime(const PredictFn& predict, const Document& doc,
                                           const LimeConfig& config) {
  auto players = unique_types(doc);
  const int n = static_cast<int>(players.size());
  if (n == 0) throw std::runtime_error("lime: document has no types");
  if (n > 30) throw std::runtime_error("lime: too many unique types (> 30)");
  if (config.n_samples < n + 2) throw std::runtime_error("lime: too few samples");

  auto samples = draw_samples(predict, doc, players, config);

  // candidates in lexicographic type order; ties in residual go to the
  // earlier candidate
  std::vector<int> candidates(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) candidates[static_cast<std::size_t>(j)] = j;
  std::sort(candidates.begin(), candidates.end(), [&](int a, int b) {
    return players[static_cast<std::size_t>(a)] < players[static_cast<std::size_t>(b)];
  });

  const double ridge = 1e-3;
  const int target_size = std::min(config.sparsity, n);
  std::vector<int> selected;
  std::vector<char> in_model(static_cast<std::size_t>(n), 0);
  while (static_cast<int>(selected.size()) < target_size) {
    int best = -1;
    double best_rss = std::numeric_limits<double>::infinity();
    for (int j : candidates) {
      if (in_model[static_cast<std::size_t>(j)]) continue;
      selected.push_back(j);
      double rss = weighted_fit(samples, selected, ridge, nullptr);
      selected.pop_back();
      if (rss < best_rss) {
        best_rss = rss;
        best = j;
      }
    }
    selected.push_back(best);
    in_model[static_cast<std::size_t>(best)] = 1;
  }

  Eigen::VectorXd beta;
  weighted_fit(samples, selected, 0.0, &beta);

  std::map<std::string, double> out;
  for (int j = 0; j < n; ++j) out[players[static_cast<std::size_t>(j)]] = 0.0;
  for (std::size_t c = 0; c < selected.size(); ++c)
    out[players[static_cast<std::size_t>(selected[c])]] = beta(static_cast<int>(c) + 1);
  return out;
}

}  // namespace featsim
