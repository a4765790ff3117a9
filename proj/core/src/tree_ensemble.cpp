#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include "featsim/models.hpp"

namespace featsim {

double Tree::eval(const FeatureVector& fv) const {
  int i = 0;
  while (nodes[static_cast<std::size_t>(i)].feature != -1) {
    const auto& n = nodes[static_cast<std::size_t>(i)];
    i = fv.count(n.feature) ? n.right : n.left;
  }
  return nodes[static_cast<std::size_t>(i)].value;
}

double TreeEnsemble::margin(const FeatureVector& fv) const {
  double sum = 0.0;
  for (const auto& t : trees) sum += t.eval(fv);
  return base_score + learning_rate * sum;
}

namespace {

constexpr double kMinGain = 1e-12;

struct Builder {
  const std::vector<FeatureVector>& xs;
  const std::vector<double>& grad;
  const std::vector<double>& hess;
  double lambda;
  int max_depth;
  Tree tree;
  std::unordered_map<int, FeatureGain>& feature_gain;

  int build(const std::vector<int>& docs, int depth) {
    double g = 0.0, h = 0.0;
    for (int i : docs) {
      g += grad[static_cast<std::size_t>(i)];
      h += hess[static_cast<std::size_t>(i)];
    }

    int best_feature = -1;
    double best_gain = kMinGain;
    if (depth < max_depth && !docs.empty()) {
      std::set<int> candidates;
      for (int i : docs)
        for (auto& [f, c] : xs[static_cast<std::size_t>(i)]) candidates.insert(f);
      for (int f : candidates) {
        double gr = 0.0, hr = 0.0;
        for (int i : docs) {
          if (xs[static_cast<std::size_t>(i)].count(f)) {
            gr += grad[static_cast<std::size_t>(i)];
            hr += hess[static_cast<std::size_t>(i)];
          }
        }
        double gl = g - gr, hl = h - hr;
        double gain = 0.5 * (gl * gl / (hl + lambda) + gr * gr / (hr + lambda) -
                             g * g / (h + lambda));
        if (gain > best_gain) {
          best_gain = gain;
          best_feature = f;
        }
      }
    }

    int self = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    if (best_feature == -1) {
      tree.nodes[static_cast<std::size_t>(self)].value = -g / (h + lambda);
      return self;
    }

    std::vector<int> left, right;
    for (int i : docs)
      (xs[static_cast<std::size_t>(i)].count(best_feature) ? right : left).push_back(i);
    auto& fg = feature_gain[best_feature];
    fg.total += best_gain;
    fg.splits += 1;
    tree.nodes[static_cast<std::size_t>(self)].feature = best_feature;
    tree.nodes[static_cast<std::size_t>(self)].gain = best_gain;
    int l = build(left, depth + 1);
    tree.nodes[static_cast<std::size_t>(self)].left = l;
    int r = build(right, depth + 1);
    tree.nodes[static_cast<std::size_t>(self)].right = r;
    return self;
  }
};

double clamped_log_odds(double p) {
  p = std::clamp(p, 1e-6, 1.0 - 1e-6);
  return std::log(p / (1.0 - p));
}

double mean_log_loss(const std::vector<double>& probs, const std::vector<int>& ys) {
  double loss = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    double p = std::clamp(probs[i], 1e-12, 1.0 - 1e-12);
    loss -= ys[i] == 1 ? std::log(p) : std::log(1.0 - p);
  }
  return loss / static_cast<double>(probs.size());
}

}  // namespace

TreeEnsemble train_trees(std::span<const Document> train, const Vocabulary& vocab,
                         const TreeHyper& hyper, std::vector<double>* round_losses) {
  if (train.empty()) throw std::runtime_error("tree training set is empty");
  std::vector<FeatureVector> xs;
  std::vector<int> ys;
  int positives = 0;
  for (const auto& doc : train) {
    xs.push_back(featurize(doc, vocab));
    ys.push_back(doc.label);
    positives += doc.label;
  }
  if (positives == 0 || positives == static_cast<int>(train.size()))
    throw std::runtime_error("tree training set needs both classes");

  TreeEnsemble model;
  model.learning_rate = hyper.learning_rate;
  model.base_score = clamped_log_odds(static_cast<double>(positives) /
                                      static_cast<double>(train.size()));

  const std::size_t n = xs.size();
  std::vector<double> margin(n, model.base_score);
  std::vector<double> prob(n), grad(n), hess(n);
  auto refresh_prob = [&] {
    for (std::size_t i = 0; i < n; ++i) prob[i] = sigmoid(margin[i]);
  };
  refresh_prob();
  if (round_losses) {
    round_losses->clear();
    round_losses->push_back(mean_log_loss(prob, ys));
  }

  std::vector<int> all_docs(n);
  for (std::size_t i = 0; i < n; ++i) all_docs[i] = static_cast<int>(i);

  for (int round = 0; round < hyper.n_trees; ++round) {
    for (std::size_t i = 0; i < n; ++i) {
      grad[i] = prob[i] - ys[i];
      hess[i] = prob[i] * (1.0 - prob[i]);
    }
    Builder builder{xs, grad, hess, hyper.lambda, hyper.max_depth, Tree{}, model.per_feature_gain};
    builder.build(all_docs, 0);
    for (std::size_t i = 0; i < n; ++i)
      margin[i] += hyper.learning_rate * builder.tree.eval(xs[i]);
    model.trees.push_back(std::move(builder.tree));
    refresh_prob();
    if (round_losses) round_losses->push_back(mean_log_loss(prob, ys));
  }
  return model;
}

}  // namespace featsim
