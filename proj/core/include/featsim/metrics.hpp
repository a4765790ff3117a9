#ifndef FEATSIM_METRICS_HPP
#define FEATSIM_METRICS_HPP

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace featsim {

// The k types with the largest |score|, ties broken toward the
// lexicographically smaller type. Returns fewer than k when the vector is
// shorter than k.
std::vector<std::string> top_k(const std::map<std::string, double>& scores, int k);

// |A n B| / |A u B|. Throws when both sets are empty.
double jaccard(const std::set<std::string>& a, const std::set<std::string>& b);

// Mean Jaccard similarity of `draws` independent pairs of uniform k-subsets
// of a pool of `n_types` types.
double random_baseline_jaccard(int n_types, int k, int draws, std::uint64_t seed);

// Shannon entropy (base 2) of the pooled distribution of top-k selections
// across instances: each selection contributes one count per selected type.
double selection_entropy(const std::vector<std::vector<std::string>>& selections);

// Mean over instances of log2(selection size); the entropy each instance
// would contribute if its selected types were used uniformly.
double per_instance_entropy(const std::vector<std::vector<std::string>>& selections);

// Shannon entropy (base 2) of a distribution given as nonnegative weights.
double entropy_bits(const std::vector<double>& weights);

// Jensen-Shannon distance (base 2) between two distributions over a shared
// label set; missing keys are zeros. Inputs are normalized first.
double js_distance(const std::map<std::string, double>& p, const std::map<std::string, double>& q);

// Spearman rank correlation with average ranks for ties. Throws when either
// input has zero rank variance ("undefined correlation").
double spearman(const std::vector<double>& a, const std::vector<double>& b);

struct MeanStderr {
  double mean = 0.0;
  double stderr_ = 0.0;
  int n = 0;
};

// Sample mean and standard error (sample standard deviation over sqrt(n));
// a single observation has standard error 0. Throws on empty input.
MeanStderr mean_stderr(const std::vector<double>& values);

}  // namespace featsim

#endif
