#include "featsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "featsim/rng.hpp"

namespace featsim {

namespace {

double log2_checked(double x) { return std::log2(x); }

}  // namespace

std::vector<std::string> top_k(const std::map<std::string, double>& scores, int k) {
  if (k < 0) throw std::runtime_error("top_k: k must be nonnegative");
  std::vector<std::pair<std::string, double>> items(scores.begin(), scores.end());
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    double ma = std::abs(a.second), mb = std::abs(b.second);
    if (ma != mb) return ma > mb;
    return a.first < b.first;
  });
  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(std::min<std::size_t>(items.size(), static_cast<std::size_t>(k))));
  for (int i = 0; i < k && i < static_cast<int>(items.size()); ++i)
    out.push_back(items[static_cast<std::size_t>(i)].first);
  return out;
}

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
  if (a.empty() && b.empty())
    throw std::runtime_error("jaccard: undefined for two empty sets");
  std::size_t inter = 0;
  auto it_a = a.begin();
  auto it_b = b.begin();
  while (it_a != a.end() && it_b != b.end()) {
    if (*it_a < *it_b) {
      ++it_a;
    } else if (*it_b < *it_a) {
      ++it_b;
    } else {
      ++inter;
      ++it_a;
      ++it_b;
    }
  }
  std::size_t uni = a.size() + b.size() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

double random_baseline_jaccard(int n_types, int k, int draws, std::uint64_t seed) {
  if (k < 1 || k > n_types)
    throw std::runtime_error("random baseline: need 1 <= k <= n_types");
  if (draws < 1) throw std::runtime_error("random baseline: need at least one draw");
  Rng rng(seed);
  double total = 0.0;
  std::vector<char> member(static_cast<std::size_t>(n_types));
  for (int d = 0; d < draws; ++d) {
    auto a = rng.sample_without_replacement(n_types, k);
    auto b = rng.sample_without_replacement(n_types, k);
    std::fill(member.begin(), member.end(), 0);
    for (int x : a) member[static_cast<std::size_t>(x)] = 1;
    int inter = 0;
    for (int x : b) inter += member[static_cast<std::size_t>(x)];
    total += static_cast<double>(inter) / static_cast<double>(2 * k - inter);
  }
  return total / draws;
}

double entropy_bits(const std::vector<double>& weights) {
  double total = 0.0;
  for (double w : weights) {
    if (w < 0) throw std::runtime_error("entropy: negative weight");
    total += w;
  }
  if (total <= 0) throw std::runtime_error("entropy: empty distribution");
  double h = 0.0;
  for (double w : weights) {
    if (w <= 0) continue;
    double p = w / total;
    h -= p * log2_checked(p);
  }
  return h;
}

double selection_entropy(const std::vector<std::vector<std::string>>& selections) {
  std::unordered_map<std::string, double> counts;
  for (const auto& sel : selections)
    for (const auto& type : sel) counts[type] += 1.0;
  if (counts.empty()) throw std::runtime_error("selection entropy: no selected types");
  std::vector<double> weights;
  weights.reserve(counts.size());
  for (auto& [type, c] : counts) weights.push_back(c);
  return entropy_bits(weights);
}

double per_instance_entropy(const std::vector<std::vector<std::string>>& selections) {
  if (selections.empty()) throw std::runtime_error("per-instance entropy: no selections");
  double total = 0.0;
  for (const auto& sel : selections) {
    if (sel.empty()) throw std::runtime_error("per-instance entropy: empty selection");
    total += log2_checked(static_cast<double>(sel.size()));
  }
  return total / static_cast<double>(selections.size());
}

double js_distance(const std::map<std::string, double>& p, const std::map<std::string, double>& q) {
  double sp = 0.0, sq = 0.0;
  for (auto& [k, v] : p) {
    if (v < 0) throw std::runtime_error("js distance: negative weight");
    sp += v;
  }
  for (auto& [k, v] : q) {
    if (v < 0) throw std::runtime_error("js distance: negative weight");
    sq += v;
  }
  if (sp <= 0 || sq <= 0) throw std::runtime_error("js distance: empty distribution");

  std::map<std::string, std::pair<double, double>> joined;
  for (auto& [k, v] : p) joined[k].first = v / sp;
  for (auto& [k, v] : q) joined[k].second = v / sq;

  auto plogp = [](double x) { return x > 0 ? -x * std::log2(x) : 0.0; };
  double hp = 0.0, hq = 0.0, hm = 0.0;
  for (auto& [k, pq] : joined) {
    hp += plogp(pq.first);
    hq += plogp(pq.second);
    hm += plogp(0.5 * (pq.first + pq.second));
  }
  double jsd = hm - 0.5 * (hp + hq);
  if (jsd < 0) jsd = 0;  // guard tiny negative rounding
  return std::sqrt(jsd);
}

namespace {

// Average ranks, 1-based, ties get the mean of their positions.
std::vector<double> average_ranks(const std::vector<double>& values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = avg;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw std::runtime_error("spearman: length mismatch");
  if (a.size() < 2) throw std::runtime_error("spearman: need at least two observations");
  auto ra = average_ranks(a);
  auto rb = average_ranks(b);
  const double n = static_cast<double>(a.size());
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += ra[i];
    mb += rb[i];
  }
  ma /= n;
  mb /= n;
  double cov = 0.0, va = 0.0, vb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double da = ra[i] - ma, db = rb[i] - mb;
    cov += da * db;
    va += da * da;
    vb += db * db;
  }
  if (va == 0.0 || vb == 0.0)
    throw std::runtime_error("spearman: undefined correlation for constant ranks");
  return cov / std::sqrt(va * vb);
}

MeanStderr mean_stderr(const std::vector<double>& values) {
  if (values.empty()) throw std::runtime_error("mean: empty sample");
  MeanStderr out;
  out.n = static_cast<int>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  out.mean = sum / out.n;
  if (out.n == 1) {
    out.stderr_ = 0.0;
    return out;
  }
  double ss = 0.0;
  for (double v : values) {
    double d = v - out.mean;
    ss += d * d;
  }
  double sd = std::sqrt(ss / (out.n - 1));
  out.stderr_ = sd / std::sqrt(static_cast<double>(out.n));
  return out;
}

}  // namespace featsim
