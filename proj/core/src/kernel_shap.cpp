#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "featsim/explain.hpp"
#include "featsim/rng.hpp"

namespace featsim {

std::vector<std::string> unique_types(const Document& doc) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const auto& tok : doc.tokens)
    if (seen.insert(tok).second) out.push_back(tok);
  return out;
}

std::vector<double> shapley_enumeration(int n, const std::function<double(std::uint32_t)>& value) {
  if (n < 1) throw std::runtime_error("shapley enumeration: need at least one player");
  if (n > 15) throw std::runtime_error("shapley enumeration: game too large (n > 15)");
  const std::uint32_t full = (1u << n) - 1u;

  std::vector<double> v(static_cast<std::size_t>(full) + 1);
  for (std::uint32_t mask = 0; mask <= full; ++mask) v[mask] = value(mask);

  // weight of a coalition of size s joined by one more player
  std::vector<double> fact(static_cast<std::size_t>(n) + 1, 1.0);
  for (int i = 1; i <= n; ++i) fact[static_cast<std::size_t>(i)] = fact[static_cast<std::size_t>(i - 1)] * i;
  std::vector<double> w(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s)
    w[static_cast<std::size_t>(s)] =
        fact[static_cast<std::size_t>(s)] * fact[static_cast<std::size_t>(n - s - 1)] / fact[static_cast<std::size_t>(n)];

  std::vector<double> phi(static_cast<std::size_t>(n), 0.0);
  for (std::uint32_t mask = 0; mask <= full; ++mask) {
    int s = std::popcount(mask);
    for (int j = 0; j < n; ++j) {
      if (mask & (1u << j)) continue;
      phi[static_cast<std::size_t>(j)] +=
          w[static_cast<std::size_t>(s)] * (v[mask | (1u << j)] - v[mask]);
    }
  }
  return phi;
}

namespace {

// v(mask) for the type-removal game: keep the types inside the mask, delete
// every occurrence of the rest.
double removal_value(const PredictFn& predict, const Document& doc,
                     const std::vector<std::string>& players, std::uint32_t mask) {
  std::unordered_set<std::string> drop;
  for (std::size_t j = 0; j < players.size(); ++j)
    if (!(mask & (1u << j))) drop.insert(players[j]);
  return predict(remove_types(doc, drop));
}

double choose(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

// Solves the kernel-weighted regression with the efficiency constraint folded
// in by eliminating the last player's value.
std::vector<double> constrained_wls(int n, const std::vector<std::uint32_t>& masks,
                                    const std::vector<double>& weights,
                                    const std::vector<double>& values, double v_empty,
                                    double v_full) {
  const double delta = v_full - v_empty;
  const int m = static_cast<int>(masks.size());
  Eigen::MatrixXd a(m, n - 1);
  Eigen::VectorXd u(m);
  for (int r = 0; r < m; ++r) {
    const std::uint32_t mask = masks[static_cast<std::size_t>(r)];
    const double z_last = (mask >> (n - 1)) & 1u ? 1.0 : 0.0;
    const double sw = std::sqrt(weights[static_cast<std::size_t>(r)]);
    for (int j = 0; j < n - 1; ++j) {
      double z_j = (mask >> j) & 1u ? 1.0 : 0.0;
      a(r, j) = sw * (z_j - z_last);
    }
    u(r) = sw * (values[static_cast<std::size_t>(r)] - v_empty - z_last * delta);
  }
  Eigen::VectorXd psi = a.colPivHouseholderQr().solve(u);
  std::vector<double> phi(static_cast<std::size_t>(n));
  double sum = 0.0;
  for (int j = 0; j < n - 1; ++j) {
    phi[static_cast<std::size_t>(j)] = psi(j);
    sum += psi(j);
  }
  phi[static_cast<std::size_t>(n - 1)] = delta - sum;
  return phi;
}

}  // namespace

std::map<std::string, double> explain_kernel_shap(const PredictFn& predict, const Document& doc,
                                                  const ShapConfig& config) {
  auto players = unique_types(doc);
  const int n = static_cast<int>(players.size());
  if (n == 0) throw std::runtime_error("kernel shap: document has no types");
  if (n > 30) throw std::runtime_error("kernel shap: too many unique types (> 30)");

  const double v_empty = removal_value(predict, doc, players, 0u);
  const std::uint32_t full = n < 32 ? (1u << n) - 1u : 0u;
  const double v_full = removal_value(predict, doc, players, full);

  if (n == 1) return {{players[0], v_full - v_empty}};

  auto kernel = [n](int s) {
    return (n - 1.0) / (choose(n, s) * s * (n - s));
  };

  std::vector<std::uint32_t> masks;
  std::vector<double> weights;
  std::vector<double> values;
  if (n <= config.exact_threshold) {
    for (std::uint32_t mask = 1; mask < full; ++mask) {
      masks.push_back(mask);
      weights.push_back(kernel(std::popcount(mask)));
      values.push_back(removal_value(predict, doc, players, mask));
    }
  } else {
    // uniform proper-subset sampling; duplicates collapse into row weights so
    // the objective matches the full enumeration in expectation
    Rng rng(config.seed);
    std::map<std::uint32_t, int> counts;
    for (int t = 0; t < config.n_coalitions; ++t) {
      std::uint32_t mask = 0;
      for (int j = 0; j < n; ++j)
        if (rng.next_u64() & 1u) mask |= 1u << j;
      if (mask == 0u || mask == full) {
        --t;  // rejected; keep the budget in accepted draws
        continue;
      }
      ++counts[mask];
    }
    for (auto& [mask, count] : counts) {
      masks.push_back(mask);
      weights.push_back(count * kernel(std::popcount(mask)));
      values.push_back(removal_value(predict, doc, players, mask));
    }
  }

  auto phi = constrained_wls(n, masks, weights, values, v_empty, v_full);
  std::map<std::string, double> out;
  for (int j = 0; j < n; ++j) out[players[static_cast<std::size_t>(j)]] = phi[static_cast<std::size_t>(j)];
  return out;
}

std::map<std::string, double> exact_shapley_oracle(const PredictFn& predict, const Document& doc) {
  auto players = unique_types(doc);
  const int n = static_cast<int>(players.size());
  if (n == 0) throw std::runtime_error("shapley oracle: document has no types");
  auto phi = shapley_enumeration(
      n, [&](std::uint32_t mask) { return removal_value(predict, doc, players, mask); });
  std::map<std::string, double> out;
  for (int j = 0; j < n; ++j) out[players[static_cast<std::size_t>(j)]] = phi[static_cast<std::size_t>(j)];
  return out;
}

std::map<std::string, double> linear_shap_closed_form(const LinearModel& model,
                                                      const Vocabulary& vocab,
                                                      const Document& doc,
                                                      const std::vector<double>& background) {
  if (!background.empty() && background.size() != model.weights.size())
    throw std::runtime_error("linear shap: background length differs from weight length");
  auto fv = featurize(doc, vocab);
  std::map<std::string, double> out;
  for (auto& [idx, count] : fv) {
    double bg = background.empty() ? 0.0 : background[static_cast<std::size_t>(idx)];
    out[vocab.type_of(idx)] = model.weights[static_cast<std::size_t>(idx)] * (count - bg);
  }
  return out;
}

}  // namespace featsim
