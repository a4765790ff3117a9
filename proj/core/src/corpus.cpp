#include "featsim/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "featsim/rng.hpp"

namespace featsim {

namespace {

bool is_punct(char c) { return std::ispunct(static_cast<unsigned char>(c)) != 0; }

std::string lowercase(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::istringstream in{std::string(text)};
  std::string piece;
  while (in >> piece) {
    std::size_t first = 0;
    while (first < piece.size() && is_punct(piece[first])) ++first;
    if (first == piece.size()) {
      for (char c : piece) tokens.emplace_back(1, c);
      continue;
    }
    std::size_t last = piece.size() - 1;
    while (last > first && is_punct(piece[last])) --last;
    for (std::size_t i = 0; i < first; ++i) tokens.emplace_back(1, piece[i]);
    tokens.push_back(lowercase(piece.substr(first, last - first + 1)));
    for (std::size_t i = last + 1; i < piece.size(); ++i) tokens.emplace_back(1, piece[i]);
  }
  return tokens;
}

std::vector<Document> load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open corpus file: " + path.string());
  std::vector<Document> docs;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw std::runtime_error("corpus line " + std::to_string(line_no) +
                               ": invalid JSON: " + e.what());
    }
    Document doc;
    doc.id = j.contains("id") ? j.at("id").get<std::string>() : "line" + std::to_string(line_no);
    if (!j.contains("label") || !j.at("label").is_number_integer())
      throw std::runtime_error("corpus line " + std::to_string(line_no) +
                               ": missing integer label");
    doc.label = j.at("label").get<int>();
    if (doc.label != 0 && doc.label != 1)
      throw std::runtime_error("corpus line " + std::to_string(line_no) +
                               ": label must be 0 or 1");
    doc.text = j.value("text", std::string());
    if (j.contains("tokens")) {
      for (const auto& t : j.at("tokens")) doc.tokens.push_back(lowercase(t.get<std::string>()));
    } else {
      doc.tokens = tokenize(doc.text);
    }
    if (doc.tokens.empty())
      throw std::runtime_error("corpus line " + std::to_string(line_no) + ": empty document");
    if (j.contains("pos")) {
      std::vector<std::string> tags;
      for (const auto& t : j.at("pos")) tags.push_back(t.get<std::string>());
      if (tags.size() != doc.tokens.size())
        throw std::runtime_error("corpus line " + std::to_string(line_no) +
                                 ": pos length mismatch");
      doc.pos_tags = std::move(tags);
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

Vocabulary::Vocabulary(std::vector<std::string> types) : index_to_type_(std::move(types)) {
  for (int i = 0; i < static_cast<int>(index_to_type_.size()); ++i) {
    if (!type_to_index_.emplace(index_to_type_[i], i).second)
      throw std::runtime_error("duplicate vocabulary type: " + index_to_type_[i]);
  }
}

std::optional<int> Vocabulary::index_of(const std::string& type) const {
  auto it = type_to_index_.find(type);
  if (it == type_to_index_.end()) return std::nullopt;
  return it->second;
}

Vocabulary build_vocabulary(std::span<const Document> docs, int min_count) {
  std::unordered_map<std::string, long long> counts;
  for (const auto& doc : docs)
    for (const auto& tok : doc.tokens) ++counts[tok];
  std::vector<std::pair<std::string, long long>> kept;
  for (auto& [type, count] : counts)
    if (count >= min_count) kept.emplace_back(type, count);
  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  std::vector<std::string> types;
  types.reserve(kept.size());
  for (auto& [type, count] : kept) types.push_back(type);
  return Vocabulary(std::move(types));
}

FeatureVector featurize(const Document& doc, const Vocabulary& vocab) {
  FeatureVector fv;
  for (const auto& tok : doc.tokens)
    if (auto idx = vocab.index_of(tok)) ++fv[*idx];
  return fv;
}

double type_token_ratio(const Document& doc) {
  if (doc.tokens.empty()) throw std::runtime_error("type token ratio of empty document");
  std::set<std::string> uniq(doc.tokens.begin(), doc.tokens.end());
  return static_cast<double>(uniq.size()) / static_cast<double>(doc.tokens.size());
}

SplitResult split(std::vector<Document> docs, const SplitSpec& spec) {
  double sum = spec.train + spec.validation + spec.test;
  if (std::abs(sum - 1.0) > 1e-12) throw std::runtime_error("split fractions must sum to 1");
  if (spec.train < 0 || spec.validation < 0 || spec.test < 0)
    throw std::runtime_error("split fractions must be nonnegative");
  const int n = static_cast<int>(docs.size());
  const double fractions[3] = {spec.train, spec.validation, spec.test};
  int sizes[3];
  double remainders[3];
  int assigned = 0;
  for (int i = 0; i < 3; ++i) {
    double quota = fractions[i] * n;
    sizes[i] = static_cast<int>(std::floor(quota));
    remainders[i] = quota - sizes[i];
    assigned += sizes[i];
  }
  int order[3] = {0, 1, 2};
  std::stable_sort(order, order + 3, [&](int a, int b) { return remainders[a] > remainders[b]; });
  for (int i = 0; assigned < n; ++i, ++assigned) ++sizes[order[i % 3]];

  std::vector<int> idx(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
  Rng rng(spec.seed);
  rng.shuffle(idx);

  SplitResult result;
  int pos = 0;
  for (int part = 0; part < 3; ++part) {
    auto& out = part == 0 ? result.train : part == 1 ? result.validation : result.test;
    out.reserve(static_cast<std::size_t>(sizes[part]));
    for (int i = 0; i < sizes[part]; ++i)
      out.push_back(std::move(docs[static_cast<std::size_t>(idx[static_cast<std::size_t>(pos++)])]));
  }
  return result;
}

Document remove_types(const Document& doc, const std::unordered_set<std::string>& drop) {
  Document out;
  out.id = doc.id;
  out.label = doc.label;
  std::vector<std::string> tags;
  for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
    if (drop.count(doc.tokens[i])) continue;
    out.tokens.push_back(doc.tokens[i]);
    if (doc.pos_tags) tags.push_back((*doc.pos_tags)[i]);
  }
  if (doc.pos_tags) out.pos_tags = std::move(tags);
  std::string text;
  for (const auto& tok : out.tokens) {
    if (!text.empty()) text += ' ';
    text += tok;
  }
  out.text = std::move(text);
  return out;
}

}  // namespace featsim
