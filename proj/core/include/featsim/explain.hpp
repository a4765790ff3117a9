#ifndef FEATSIM_EXPLAIN_HPP
#define FEATSIM_EXPLAIN_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "featsim/corpus.hpp"
#include "featsim/models.hpp"

namespace featsim {

struct LimeConfig {
  int n_samples = 1000;
  double kernel_width = 0.0;  // 0 selects 0.75 * sqrt(n_types)
  int sparsity = 10;          // features kept by forward selection
  std::uint64_t seed = 0;
};

struct ShapConfig {
  int exact_threshold = 12;  // enumerate all coalitions up to this many types
  int n_coalitions = 2048;   // sampled mode budget
  std::uint64_t seed = 0;
};

// Local surrogate scores over every unique type of the document. Perturbs by
// deleting all occurrences of masked types, weights samples by an exponential
// kernel on cosine distance, forward-selects `sparsity` features under ridge,
// then reports unregularized least-squares coefficients (unselected types 0).
std::map<std::string, double> explain_lime(const PredictFn& predict, const Document& doc,
                                           const LimeConfig& config);

// Shapley values of the type-removal game, estimated by kernel-weighted
// least squares. Exact enumeration when the document has at most
// exact_threshold unique types, otherwise sampled coalitions.
std::map<std::string, double> explain_kernel_shap(const PredictFn& predict, const Document& doc,
                                                  const ShapConfig& config);

// Exact Shapley values of an arbitrary n-player game given by bitmask.
// Intended for verification; throws above n = 15.
std::vector<double> shapley_enumeration(int n, const std::function<double(std::uint32_t)>& value);

// Exact Shapley values of the type-removal game by full enumeration.
std::map<std::string, double> exact_shapley_oracle(const PredictFn& predict, const Document& doc);

// phi_j = w_j * (x_j - background_j) on the margin scale, for the document's
// present in-vocabulary types.
std::map<std::string, double> linear_shap_closed_form(const LinearModel& model,
                                                      const Vocabulary& vocab,
                                                      const Document& doc,
                                                      const std::vector<double>& background);

// Unique types of the document in first-occurrence order, the player set of
// both post-hoc methods.
std::vector<std::string> unique_types(const Document& doc);

}  // namespace featsim

#endif
