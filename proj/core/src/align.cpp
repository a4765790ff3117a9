#include "featsim/align.hpp"

#include <algorithm>
#include <cctype>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace featsim {

namespace {

bool is_punct(char c) { return std::ispunct(static_cast<unsigned char>(c)) != 0; }

std::string lowercase(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

void Tokenization::validate() const {
  if (tokens.size() != spans.size())
    throw std::runtime_error("tokenization: token/span count mismatch");
  for (std::size_t i = 0; i < spans.size(); ++i) {
    const auto& s = spans[i];
    if (s.start > s.end) throw std::runtime_error("tokenization: inverted span");
    if (s.end - s.start + 1 != static_cast<int>(tokens[i].size()))
      throw std::runtime_error("tokenization: span length differs from token length");
    if (i > 0 && s.start <= spans[i - 1].end)
      throw std::runtime_error("tokenization: spans overlap or are unsorted");
  }
}

Tokenization Tokenization::from_text(std::string_view text) {
  Tokenization out;
  std::istringstream in{std::string(text)};
  std::string piece;
  std::vector<std::string> pieces;
  while (in >> piece) {
    std::size_t first = 0;
    while (first < piece.size() && is_punct(piece[first])) ++first;
    if (first == piece.size()) {
      for (char c : piece) pieces.emplace_back(1, c);
      continue;
    }
    std::size_t last = piece.size() - 1;
    while (last > first && is_punct(piece[last])) --last;
    for (std::size_t i = 0; i < first; ++i) pieces.emplace_back(1, piece[i]);
    pieces.push_back(piece.substr(first, last - first + 1));
    for (std::size_t i = last + 1; i < piece.size(); ++i) pieces.emplace_back(1, piece[i]);
  }
  int offset = 0;
  for (auto& p : pieces) {
    int len = static_cast<int>(p.size());
    out.spans.push_back({offset, offset + len - 1});
    out.tokens.push_back(std::move(p));
    offset += len;
  }
  return out;
}

WeightVector align_weights(const Tokenization& dst, const Tokenization& src,
                           const WeightVector& src_weights, double* dropped_mass) {
  src.validate();
  dst.validate();
  if (src_weights.size() != src.size())
    throw std::runtime_error("align: weight count differs from src token count");

  WeightVector out(dst.size(), 0.0);
  double dropped = 0.0;
  std::size_t j0 = 0;  // first dst span that can still overlap
  for (std::size_t k = 0; k < src.size(); ++k) {
    const TokenSpan s = src.spans[k];
    const double len = static_cast<double>(s.end - s.start + 1);
    while (j0 < dst.size() && dst.spans[j0].end < s.start) ++j0;
    double covered = 0.0;
    for (std::size_t j = j0; j < dst.size() && dst.spans[j].start <= s.end; ++j) {
      int ov = std::min(dst.spans[j].end, s.end) - std::max(dst.spans[j].start, s.start) + 1;
      if (ov <= 0) continue;
      double ratio = ov / len;
      out[j] += src_weights[k] * ratio;
      covered += ratio;
    }
    if (covered < 1.0) dropped += src_weights[k] * (1.0 - covered);
  }
  if (dropped_mass) *dropped_mass = dropped;
  if (std::abs(dropped) > 1e-9)
    std::cerr << "align: dropped weight mass " << dropped
              << " (target tokenization does not cover the source)\n";
  return out;
}

std::map<std::string, double> aggregate_subword_to_word(const Tokenization& words,
                                                        const Tokenization& subwords,
                                                        const WeightVector& subword_weights) {
  WeightVector word_weights = align_weights(words, subwords, subword_weights);
  std::map<std::string, std::pair<double, int>> acc;
  for (std::size_t i = 0; i < words.size(); ++i) {
    auto& [sum, count] = acc[lowercase(words.tokens[i])];
    sum += word_weights[i];
    ++count;
  }
  std::map<std::string, double> out;
  for (auto& [type, sc] : acc) out[type] = sc.first / sc.second;
  return out;
}

Tokenization demo_subword_split(const Tokenization& words) {
  words.validate();
  Tokenization out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    std::vector<std::string> pieces;
    std::string cur;
    for (char c : words.tokens[i]) {
      if (c == '\'' && !cur.empty()) {
        pieces.push_back(std::move(cur));
        cur.clear();
      }
      cur += c;
    }
    if (!cur.empty()) pieces.push_back(std::move(cur));
    std::vector<std::string> halved;
    for (auto& p : pieces) {
      if (p.size() >= 4) {
        std::size_t half = p.size() / 2;
        halved.push_back(p.substr(0, half));
        halved.push_back(p.substr(half));
      } else {
        halved.push_back(std::move(p));
      }
    }
    int offset = words.spans[i].start;
    for (auto& p : halved) {
      int len = static_cast<int>(p.size());
      out.spans.push_back({offset, offset + len - 1});
      out.tokens.push_back(std::move(p));
      offset += len;
    }
  }
  return out;
}

}  // namespace featsim
