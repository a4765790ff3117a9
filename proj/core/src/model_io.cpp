#include "featsim/model_io.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace featsim {

namespace {

using nlohmann::json;

json dump_json(const TrainedModel& model) {
  json j;
  j["name"] = model.name();
  j["kind"] = model.kind();
  if (const auto* lin = std::get_if<LinearModel>(&model.impl())) {
    j["weights"] = lin->weights;
    j["bias"] = lin->bias;
    j["reg"] = lin->reg == Regularization::L1 ? "l1" : "l2";
    j["reg_strength"] = lin->reg_strength;
  } else if (const auto* trees = std::get_if<TreeEnsemble>(&model.impl())) {
    j["base_score"] = trees->base_score;
    j["learning_rate"] = trees->learning_rate;
    json jt = json::array();
    for (const auto& tree : trees->trees) {
      json jn = json::array();
      for (const auto& n : tree.nodes)
        jn.push_back({{"f", n.feature},
                      {"l", n.left},
                      {"r", n.right},
                      {"g", n.gain},
                      {"v", n.value}});
      jt.push_back(std::move(jn));
    }
    j["trees"] = std::move(jt);
    json jg = json::object();
    for (const auto& [f, g] : trees->per_feature_gain)
      jg[std::to_string(f)] = {{"total", g.total}, {"splits", g.splits}};
    j["per_feature_gain"] = std::move(jg);
  } else {
    const auto& net = std::get<AttentionNet>(model.impl());
    j["embed_dim"] = net.embed_dim;
    j["vocab_size"] = net.vocab_size;
    j["embeddings"] = net.embeddings;
    j["context"] = net.context;
    j["output_weights"] = net.output_weights;
    j["output_bias"] = net.output_bias;
  }
  return j;
}

json read_json(const std::filesystem::path& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(std::string("cannot open ") + what + ": " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("invalid ") + what + " JSON in " + path.string() + ": " +
                             e.what());
  }
  return j;
}

}  // namespace

void save_model(const TrainedModel& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write model file: " + path.string());
  out << dump_json(model).dump(2) << '\n';
}

TrainedModel load_model(const std::filesystem::path& path,
                        std::shared_ptr<const Vocabulary> vocab) {
  json j = read_json(path, "model file");
  const std::string name = j.at("name").get<std::string>();
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "linear") {
    LinearModel lin;
    lin.weights = j.at("weights").get<std::vector<double>>();
    lin.bias = j.at("bias").get<double>();
    lin.reg = j.at("reg").get<std::string>() == "l1" ? Regularization::L1 : Regularization::L2;
    lin.reg_strength = j.at("reg_strength").get<double>();
    if (static_cast<int>(lin.weights.size()) != vocab->size())
      throw std::runtime_error("model " + name + ": weight count differs from vocabulary size");
    return TrainedModel(name, std::move(vocab), std::move(lin));
  }
  if (kind == "trees") {
    TreeEnsemble trees;
    trees.base_score = j.at("base_score").get<double>();
    trees.learning_rate = j.at("learning_rate").get<double>();
    for (const auto& jt : j.at("trees")) {
      Tree tree;
      for (const auto& jn : jt) {
        TreeNode n;
        n.feature = jn.at("f").get<int>();
        n.left = jn.at("l").get<int>();
        n.right = jn.at("r").get<int>();
        n.gain = jn.at("g").get<double>();
        n.value = jn.at("v").get<double>();
        tree.nodes.push_back(n);
      }
      trees.trees.push_back(std::move(tree));
    }
    for (const auto& [key, jg] : j.at("per_feature_gain").items()) {
      FeatureGain g;
      g.total = jg.at("total").get<double>();
      g.splits = jg.at("splits").get<int>();
      trees.per_feature_gain[std::stoi(key)] = g;
    }
    return TrainedModel(name, std::move(vocab), std::move(trees));
  }
  if (kind == "attention") {
    AttentionNet net;
    net.embed_dim = j.at("embed_dim").get<int>();
    net.vocab_size = j.at("vocab_size").get<int>();
    net.embeddings = j.at("embeddings").get<std::vector<double>>();
    net.context = j.at("context").get<std::vector<double>>();
    net.output_weights = j.at("output_weights").get<std::vector<double>>();
    net.output_bias = j.at("output_bias").get<double>();
    if (net.vocab_size != vocab->size())
      throw std::runtime_error("model " + name + ": vocab_size differs from vocabulary");
    if (net.embeddings.size() !=
        static_cast<std::size_t>(net.vocab_size) * static_cast<std::size_t>(net.embed_dim))
      throw std::runtime_error("model " + name + ": embedding matrix has the wrong shape");
    return TrainedModel(name, std::move(vocab), std::move(net));
  }
  throw std::runtime_error("model " + name + ": unknown kind '" + kind + "'");
}

void save_vocabulary(const Vocabulary& vocab, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write vocabulary file: " + path.string());
  json j;
  j["types"] = vocab.types();
  out << j.dump(2) << '\n';
}

std::shared_ptr<const Vocabulary> load_vocabulary(const std::filesystem::path& path) {
  json j = read_json(path, "vocabulary file");
  return std::make_shared<const Vocabulary>(j.at("types").get<std::vector<std::string>>());
}

}  // namespace featsim
