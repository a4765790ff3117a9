#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "featsim/models.hpp"
#include "featsim/rng.hpp"

namespace featsim {

AttentionNet::Forward AttentionNet::forward(const std::vector<int>& type_ids) const {
  Forward out;
  const std::size_t n = type_ids.size();
  if (n == 0) {
    out.prob = sigmoid(output_bias);
    return out;
  }
  const std::size_t d = static_cast<std::size_t>(embed_dim);
  std::vector<double> scores(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double* e = &embeddings[static_cast<std::size_t>(type_ids[i]) * d];
    double s = 0.0;
    for (std::size_t j = 0; j < d; ++j) s += context[j] * e[j];
    scores[i] = s;
  }
  double m = *std::max_element(scores.begin(), scores.end());
  out.attention.resize(n);
  double z = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    out.attention[i] = std::exp(scores[i] - m);
    z += out.attention[i];
  }
  for (auto& a : out.attention) a /= z;

  double logit = output_bias;
  for (std::size_t j = 0; j < d; ++j) {
    double hj = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      hj += out.attention[i] * embeddings[static_cast<std::size_t>(type_ids[i]) * d + j];
    logit += output_weights[j] * hj;
  }
  out.prob = sigmoid(logit);
  return out;
}

double attention_loss(const AttentionNet& net, const std::vector<int>& type_ids, int label) {
  double p = std::clamp(net.forward(type_ids).prob, 1e-12, 1.0 - 1e-12);
  return label == 1 ? -std::log(p) : -std::log(1.0 - p);
}

AttentionGradients attention_gradients(const AttentionNet& net,
                                       const std::vector<int>& type_ids, int label) {
  AttentionGradients g;
  const std::size_t d = static_cast<std::size_t>(net.embed_dim);
  g.d_context.assign(d, 0.0);
  g.d_output_weights.assign(d, 0.0);

  auto fwd = net.forward(type_ids);
  double p = std::clamp(fwd.prob, 1e-12, 1.0 - 1e-12);
  g.loss = label == 1 ? -std::log(p) : -std::log(1.0 - p);
  double delta = fwd.prob - label;
  g.d_output_bias = delta;
  const std::size_t n = type_ids.size();
  if (n == 0) return g;

  // h and the per-token projections g_i = delta * (v . e_i)
  std::vector<double> h(d, 0.0);
  std::vector<double> proj(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double* e = &net.embeddings[static_cast<std::size_t>(type_ids[i]) * d];
    for (std::size_t j = 0; j < d; ++j) {
      h[j] += fwd.attention[i] * e[j];
      proj[i] += net.output_weights[j] * e[j];
    }
    proj[i] *= delta;
  }
  for (std::size_t j = 0; j < d; ++j) g.d_output_weights[j] = delta * h[j];

  double mixed = 0.0;
  for (std::size_t i = 0; i < n; ++i) mixed += fwd.attention[i] * proj[i];
  std::vector<double> d_score(n);
  for (std::size_t i = 0; i < n; ++i) d_score[i] = fwd.attention[i] * (proj[i] - mixed);

  for (std::size_t i = 0; i < n; ++i) {
    const double* e = &net.embeddings[static_cast<std::size_t>(type_ids[i]) * d];
    auto& de = g.d_embeddings[type_ids[i]];
    if (de.empty()) de.assign(d, 0.0);
    for (std::size_t j = 0; j < d; ++j) {
      g.d_context[j] += d_score[i] * e[j];
      de[j] += fwd.attention[i] * delta * net.output_weights[j] + d_score[i] * net.context[j];
    }
  }
  return g;
}

AttentionNet train_attention(std::span<const Document> train, const Vocabulary& vocab,
                             const AttentionHyper& hyper, std::vector<double>* epoch_losses) {
  if (train.empty()) throw std::runtime_error("attention training set is empty");
  bool pos = false, neg = false;
  for (const auto& doc : train) (doc.label == 1 ? pos : neg) = true;
  if (!pos || !neg) throw std::runtime_error("attention training set needs both classes");

  AttentionNet net;
  net.embed_dim = hyper.embed_dim;
  net.vocab_size = vocab.size();
  const std::size_t d = static_cast<std::size_t>(hyper.embed_dim);
  Rng rng(hyper.seed);
  net.embeddings.resize(static_cast<std::size_t>(vocab.size()) * d);
  for (auto& x : net.embeddings) x = rng.normal() * 0.1;
  net.context.resize(d);
  for (auto& x : net.context) x = rng.normal() * 0.1;
  net.output_weights.resize(d);
  for (auto& x : net.output_weights) x = rng.normal() * 0.1;
  net.output_bias = 0.0;

  std::vector<std::vector<int>> ids;
  std::vector<int> ys;
  for (const auto& doc : train) {
    std::vector<int> t;
    for (const auto& tok : doc.tokens)
      if (auto idx = vocab.index_of(tok)) t.push_back(*idx);
    ids.push_back(std::move(t));
    ys.push_back(doc.label);
  }
  const double inv_n = 1.0 / static_cast<double>(ids.size());

  std::vector<double> acc_emb(net.embeddings.size());
  std::vector<double> acc_ctx(d), acc_out(d);
  if (epoch_losses) epoch_losses->clear();
  for (int epoch = 0; epoch < hyper.epochs; ++epoch) {
    std::fill(acc_emb.begin(), acc_emb.end(), 0.0);
    std::fill(acc_ctx.begin(), acc_ctx.end(), 0.0);
    std::fill(acc_out.begin(), acc_out.end(), 0.0);
    double acc_bias = 0.0;
    double loss = 0.0;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      auto g = attention_gradients(net, ids[i], ys[i]);
      loss += g.loss;
      for (auto& [type, de] : g.d_embeddings) {
        double* dst = &acc_emb[static_cast<std::size_t>(type) * d];
        for (std::size_t j = 0; j < d; ++j) dst[j] += de[j];
      }
      for (std::size_t j = 0; j < d; ++j) {
        acc_ctx[j] += g.d_context[j];
        acc_out[j] += g.d_output_weights[j];
      }
      acc_bias += g.d_output_bias;
    }
    if (epoch_losses) epoch_losses->push_back(loss * inv_n);
    const double step = hyper.learning_rate * inv_n;
    for (std::size_t j = 0; j < net.embeddings.size(); ++j) net.embeddings[j] -= step * acc_emb[j];
    for (std::size_t j = 0; j < d; ++j) {
      net.context[j] -= step * acc_ctx[j];
      net.output_weights[j] -= step * acc_out[j];
    }
    net.output_bias -= step * acc_bias;
  }
  return net;
}

}  // namespace featsim
