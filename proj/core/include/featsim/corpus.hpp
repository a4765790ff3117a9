#ifndef FEATSIM_CORPUS_HPP
#define FEATSIM_CORPUS_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace featsim {

// One labeled text instance. Tokens are always lowercased; pos_tags, when
// present, is index-aligned with tokens.
struct Document {
  std::string id;
  std::string text;
  std::vector<std::string> tokens;
  std::optional<std::vector<std::string>> pos_tags;
  int label = 0;
};

// Bijection token type <-> contiguous feature index in [0, size()).
class Vocabulary {
 public:
  Vocabulary() = default;
  explicit Vocabulary(std::vector<std::string> types);

  int size() const { return static_cast<int>(index_to_type_.size()); }
  std::optional<int> index_of(const std::string& type) const;
  const std::string& type_of(int index) const { return index_to_type_.at(static_cast<std::size_t>(index)); }
  const std::vector<std::string>& types() const { return index_to_type_; }

 private:
  std::vector<std::string> index_to_type_;
  std::unordered_map<std::string, int> type_to_index_;
};

// Sparse bag-of-words counts, feature index -> count. Ordered so iteration
// is deterministic.
using FeatureVector = std::map<int, int>;

struct SplitSpec {
  double train = 0.7;
  double validation = 0.1;
  double test = 0.2;
  std::uint64_t seed = 0;
};

struct SplitResult {
  std::vector<Document> train;
  std::vector<Document> validation;
  std::vector<Document> test;
};

// Lowercased whitespace tokenization with leading/trailing punctuation peeled
// into separate tokens. Interior punctuation ("it's") is kept.
std::vector<std::string> tokenize(std::string_view text);

// JSON-lines loader; one document per line with fields id/text/tokens/pos/label.
// Malformed records raise an error naming the line number.
std::vector<Document> load_corpus(const std::filesystem::path& path);

// Types with corpus frequency >= min_count, indexed by (frequency desc, type asc).
Vocabulary build_vocabulary(std::span<const Document> docs, int min_count = 2);

FeatureVector featurize(const Document& doc, const Vocabulary& vocab);

// |unique types| / |tokens|, in (0, 1].
double type_token_ratio(const Document& doc);

// Deterministic seeded shuffle, then a largest-remainder partition so sizes
// match the fractions within rounding.
SplitResult split(std::vector<Document> docs, const SplitSpec& spec);

// Copy of doc with every occurrence of the given types removed (pos_tags
// filtered in lockstep). The perturbation primitive used by the explainers.
Document remove_types(const Document& doc, const std::unordered_set<std::string>& drop);

}  // namespace featsim

#endif
