#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "featsim/models.hpp"

namespace featsim {

double LinearModel::margin(const FeatureVector& fv) const {
  double m = bias;
  for (auto& [idx, count] : fv) m += weights[static_cast<std::size_t>(idx)] * count;
  return m;
}

namespace {

struct Problem {
  std::vector<FeatureVector> xs;
  std::vector<int> ys;  // -1 or +1
  Regularization reg;
  double lambda;
  int dim;

  double objective(const std::vector<double>& w, double b) const {
    double hinge = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      double m = b;
      for (auto& [idx, count] : xs[i]) m += w[static_cast<std::size_t>(idx)] * count;
      hinge += std::max(0.0, 1.0 - ys[i] * m);
    }
    hinge /= static_cast<double>(xs.size());
    double r = 0.0;
    if (reg == Regularization::L2) {
      for (double x : w) r += x * x;
      r *= 0.5 * lambda;
    } else {
      for (double x : w) r += std::abs(x);
      r *= lambda;
    }
    return hinge + r;
  }

  // Subgradient of the mean hinge term only; the L2 penalty is added to the
  // gradient, the L1 penalty is applied proximally after the step.
  void hinge_subgradient(const std::vector<double>& w, double b, std::vector<double>& gw,
                         double& gb) const {
    std::fill(gw.begin(), gw.end(), 0.0);
    gb = 0.0;
    const double inv_n = 1.0 / static_cast<double>(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      double m = b;
      for (auto& [idx, count] : xs[i]) m += w[static_cast<std::size_t>(idx)] * count;
      if (ys[i] * m < 1.0) {
        for (auto& [idx, count] : xs[i])
          gw[static_cast<std::size_t>(idx)] -= ys[i] * count * inv_n;
        gb -= ys[i] * inv_n;
      }
    }
  }
};

}  // namespace

LinearModel train_linear(std::span<const Document> train, const Vocabulary& vocab,
                         const LinearHyper& hyper, std::vector<double>* epoch_losses) {
  if (train.empty()) throw std::runtime_error("linear training set is empty");
  Problem prob;
  prob.reg = hyper.reg;
  prob.lambda = hyper.strength;
  prob.dim = vocab.size();
  bool pos = false, neg = false;
  for (const auto& doc : train) {
    prob.xs.push_back(featurize(doc, vocab));
    prob.ys.push_back(doc.label == 1 ? 1 : -1);
    (doc.label == 1 ? pos : neg) = true;
  }
  if (!pos || !neg) throw std::runtime_error("linear training set needs both classes");

  std::vector<double> w(static_cast<std::size_t>(prob.dim), 0.0);
  double b = 0.0;
  double obj = prob.objective(w, b);
  if (epoch_losses) {
    epoch_losses->clear();
    epoch_losses->push_back(obj);
  }

  std::vector<double> gw(w.size());
  std::vector<double> trial_w(w.size());
  double step = 1.0;
  for (int epoch = 0; epoch < hyper.epochs; ++epoch) {
    double gb = 0.0;
    prob.hinge_subgradient(w, b, gw, gb);
    if (prob.reg == Regularization::L2)
      for (std::size_t j = 0; j < w.size(); ++j) gw[j] += prob.lambda * w[j];

    double trial_obj = obj;
    double trial_b = b;
    bool accepted = false;
    for (int tries = 0; tries < 40; ++tries) {
      for (std::size_t j = 0; j < w.size(); ++j) trial_w[j] = w[j] - step * gw[j];
      trial_b = b - step * gb;
      if (prob.reg == Regularization::L1) {
        const double shrink = step * prob.lambda;
        for (double& x : trial_w) {
          double mag = std::abs(x) - shrink;
          x = mag > 0 ? (x > 0 ? mag : -mag) : 0.0;
        }
      }
      trial_obj = prob.objective(trial_w, trial_b);
      if (trial_obj <= obj) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (accepted) {
      w.swap(trial_w);
      b = trial_b;
      obj = trial_obj;
      step *= 1.2;
    }
    if (epoch_losses) epoch_losses->push_back(obj);
  }

  LinearModel model;
  model.weights = std::move(w);
  model.bias = b;
  model.reg = hyper.reg;
  model.reg_strength = hyper.strength;
  return model;
}

}  // namespace featsim
