#ifndef FEATSIM_MODELS_HPP
#define FEATSIM_MODELS_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "featsim/corpus.hpp"

namespace featsim {

// Black-box prediction contract: probability of the positive class in [0,1].
// Must be pure and reentrant.
using PredictFn = std::function<double(const Document&)>;

enum class Regularization { L1, L2 };

struct LinearHyper {
  Regularization reg = Regularization::L2;
  double strength = 1e-2;
  int epochs = 300;
  std::uint64_t seed = 0;
};

struct TreeHyper {
  int n_trees = 40;
  int max_depth = 3;
  double learning_rate = 0.3;
  double lambda = 1.0;  // L2 penalty on leaf values
  std::uint64_t seed = 0;
};

struct AttentionHyper {
  int embed_dim = 16;
  double learning_rate = 0.5;
  int epochs = 200;
  std::uint64_t seed = 0;
};

// Hinge-loss linear classifier over bag-of-words counts.
struct LinearModel {
  std::vector<double> weights;  // length = vocab size
  double bias = 0.0;
  Regularization reg = Regularization::L2;
  double reg_strength = 0.0;

  double margin(const FeatureVector& fv) const;
};

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  int left = -1;     // child when the feature is absent
  int right = -1;    // child when the feature is present
  double gain = 0.0;
  double value = 0.0;  // leaf value
};

struct Tree {
  std::vector<TreeNode> nodes;
  double eval(const FeatureVector& fv) const;
};

struct FeatureGain {
  double total = 0.0;
  int splits = 0;
};

// Gradient-boosted stumps/trees on binary presence features, logistic loss,
// exact greedy split search.
struct TreeEnsemble {
  std::vector<Tree> trees;
  double base_score = 0.0;  // log-odds of the training prior
  double learning_rate = 0.3;
  std::unordered_map<int, FeatureGain> per_feature_gain;

  double margin(const FeatureVector& fv) const;
};

// Embedding bag with dot-product attention (one learned context vector) and
// a sigmoid head. Parameters are flat row-major: embeddings[type*d_e + j].
struct AttentionNet {
  int embed_dim = 0;
  int vocab_size = 0;
  std::vector<double> embeddings;      // vocab_size * embed_dim
  std::vector<double> context;         // embed_dim
  std::vector<double> output_weights;  // embed_dim
  double output_bias = 0.0;

  struct Forward {
    std::vector<double> attention;  // per input token, sums to 1
    double prob = 0.0;
  };
  Forward forward(const std::vector<int>& type_ids) const;
};

// Per-parameter gradients of the binary cross-entropy loss of one instance.
struct AttentionGradients {
  std::unordered_map<int, std::vector<double>> d_embeddings;  // type id -> d_e
  std::vector<double> d_context;
  std::vector<double> d_output_weights;
  double d_output_bias = 0.0;
  double loss = 0.0;
};

double attention_loss(const AttentionNet& net, const std::vector<int>& type_ids, int label);
AttentionGradients attention_gradients(const AttentionNet& net,
                                       const std::vector<int>& type_ids, int label);

// Trainers. All are deterministic given (data, hyper, seed) and require both
// classes in the training set.
LinearModel train_linear(std::span<const Document> train, const Vocabulary& vocab,
                         const LinearHyper& hyper,
                         std::vector<double>* epoch_losses = nullptr);
TreeEnsemble train_trees(std::span<const Document> train, const Vocabulary& vocab,
                         const TreeHyper& hyper,
                         std::vector<double>* round_losses = nullptr);
AttentionNet train_attention(std::span<const Document> train, const Vocabulary& vocab,
                             const AttentionHyper& hyper,
                             std::vector<double>* epoch_losses = nullptr);

// A trained classifier plus its vocabulary, behind one prediction and
// built-in-importance surface.
class TrainedModel {
 public:
  TrainedModel() = default;
  TrainedModel(std::string name, std::shared_ptr<const Vocabulary> vocab,
               std::variant<LinearModel, TreeEnsemble, AttentionNet> impl)
      : name_(std::move(name)), vocab_(std::move(vocab)), impl_(std::move(impl)) {}

  const std::string& name() const { return name_; }
  std::string kind() const;
  const Vocabulary& vocab() const { return *vocab_; }
  std::shared_ptr<const Vocabulary> vocab_ptr() const { return vocab_; }

  const std::variant<LinearModel, TreeEnsemble, AttentionNet>& impl() const { return impl_; }

  // Probability of the positive class. The margin-only linear model reports
  // the 0.999/0.001 substitutes.
  double predict_proba(const Document& doc) const;
  int predict_label(const Document& doc) const;

  // The model's own importance over the instance's present in-vocabulary
  // types: |coefficient| (linear, presence-only, not count-scaled),
  // average split gain (trees, 0 if never split on), mean attention weight
  // per type (attention). Throws if the instance has no in-vocabulary types.
  std::map<std::string, double> builtin_importance(const Document& doc) const;

  // In-vocabulary type ids of the document, in token order.
  std::vector<int> type_ids(const Document& doc) const;

  PredictFn predictor() const;

 private:
  std::string name_;
  std::shared_ptr<const Vocabulary> vocab_;
  std::variant<LinearModel, TreeEnsemble, AttentionNet> impl_;
};

double accuracy(const TrainedModel& model, std::span<const Document> docs);

double sigmoid(double z);

}  // namespace featsim

#endif
