#include <cmath>
#include <memory>
#include <stdexcept>

#include "featsim/models.hpp"

namespace featsim {

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  double e = std::exp(z);
  return e / (1.0 + e);
}

std::string TrainedModel::kind() const {
  if (std::holds_alternative<LinearModel>(impl_)) return "linear";
  if (std::holds_alternative<TreeEnsemble>(impl_)) return "trees";
  return "attention";
}

std::vector<int> TrainedModel::type_ids(const Document& doc) const {
  std::vector<int> ids;
  for (const auto& tok : doc.tokens)
    if (auto idx = vocab_->index_of(tok)) ids.push_back(*idx);
  return ids;
}

double TrainedModel::predict_proba(const Document& doc) const {
  if (const auto* lin = std::get_if<LinearModel>(&impl_)) {
    // The margin carries no calibrated scale, so the probability collapses to
    // a fixed pair of confident values on either side of the decision
    // boundary.
    return lin->margin(featurize(doc, *vocab_)) > 0 ? 0.999 : 0.001;
  }
  if (const auto* trees = std::get_if<TreeEnsemble>(&impl_)) {
    return sigmoid(trees->margin(featurize(doc, *vocab_)));
  }
  const auto& net = std::get<AttentionNet>(impl_);
  return net.forward(type_ids(doc)).prob;
}

int TrainedModel::predict_label(const Document& doc) const {
  return predict_proba(doc) > 0.5 ? 1 : 0;
}

std::map<std::string, double> TrainedModel::builtin_importance(const Document& doc) const {
  std::map<std::string, double> out;
  if (const auto* lin = std::get_if<LinearModel>(&impl_)) {
    for (const auto& tok : doc.tokens)
      if (auto idx = vocab_->index_of(tok))
        out[tok] = std::abs(lin->weights[static_cast<std::size_t>(*idx)]);
  } else if (const auto* trees = std::get_if<TreeEnsemble>(&impl_)) {
    for (const auto& tok : doc.tokens) {
      if (auto idx = vocab_->index_of(tok)) {
        auto it = trees->per_feature_gain.find(*idx);
        out[tok] = it == trees->per_feature_gain.end() || it->second.splits == 0
                       ? 0.0
                       : it->second.total / it->second.splits;
      }
    }
  } else {
    const auto& net = std::get<AttentionNet>(impl_);
    auto ids = type_ids(doc);
    auto fwd = net.forward(ids);
    std::map<std::string, std::pair<double, int>> acc;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      auto& [sum, count] = acc[vocab_->type_of(ids[i])];
      sum += fwd.attention[i];
      ++count;
    }
    for (auto& [type, sc] : acc) out[type] = sc.first / sc.second;
  }
  if (out.empty())
    throw std::runtime_error("builtin importance: no in-vocabulary types in " + doc.id);
  return out;
}

PredictFn TrainedModel::predictor() const {
  auto self = std::make_shared<TrainedModel>(*this);
  return [self](const Document& doc) { return self->predict_proba(doc); };
}

double accuracy(const TrainedModel& model, std::span<const Document> docs) {
  if (docs.empty()) throw std::runtime_error("accuracy: empty evaluation set");
  int correct = 0;
  for (const auto& doc : docs) correct += model.predict_label(doc) == doc.label;
  return static_cast<double>(correct) / static_cast<double>(docs.size());
}

}  // namespace featsim
