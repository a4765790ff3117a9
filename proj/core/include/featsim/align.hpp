#ifndef FEATSIM_ALIGN_HPP
#define FEATSIM_ALIGN_HPP

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace featsim {

// Inclusive character offsets.
struct TokenSpan {
  int start = 0;
  int end = 0;
};

// Ordered tokens with their character spans. Spans must be sorted,
// non-overlapping, and as long as their tokens. Offsets index the
// concatenation of token characters (no whitespace), so two tokenizations of
// the same text share one axis.
struct Tokenization {
  std::vector<std::string> tokens;
  std::vector<TokenSpan> spans;

  std::size_t size() const { return tokens.size(); }
  void validate() const;

  // Original-case tokens (whitespace split + punctuation peel, same rule as
  // corpus tokenize()) with contiguous spans on the concatenated axis.
  static Tokenization from_text(std::string_view text);
};

using WeightVector = std::vector<double>;

// Re-allocates src token weights onto dst tokens by span-overlap ratio:
// each src span (s,t) contributes (overlap chars)/(t-s+1) of its weight to a
// dst span. Mass is conserved exactly when dst tiles the characters of src;
// otherwise only the overlapped mass survives and *dropped_mass (plus a
// stderr warning) reports the remainder.
WeightVector align_weights(const Tokenization& dst, const Tokenization& src,
                           const WeightVector& src_weights,
                           double* dropped_mass = nullptr);

// align_weights onto the word tokenization, then per-type scores by averaging
// a type's aligned token weights (types are lowercased words).
std::map<std::string, double> aggregate_subword_to_word(
    const Tokenization& words, const Tokenization& subwords,
    const WeightVector& subword_weights);

// Synthetic subword splitter for demos/tests: splits at apostrophes (the
// apostrophe stays with the tail piece) and halves any piece of >= 4 chars.
Tokenization demo_subword_split(const Tokenization& words);

}  // namespace featsim

#endif
