#include "featsim/config.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace featsim {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message) {
  throw std::runtime_error("config: " + message);
}

bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
  });
}

ModelConfig parse_model(const std::string& name, const json& j) {
  ModelConfig m;
  if (!j.contains("kind")) fail("models." + name + " is missing 'kind'");
  m.kind = j.at("kind").get<std::string>();
  if (m.kind == "linear") {
    std::string reg = j.value("reg", "l2");
    if (reg != "l1" && reg != "l2") fail("models." + name + ".reg must be 'l1' or 'l2'");
    m.linear.reg = reg == "l1" ? Regularization::L1 : Regularization::L2;
    m.linear.strength = j.value("strength", m.linear.strength);
    m.linear.epochs = j.value("epochs", m.linear.epochs);
    m.linear.seed = j.value("seed", m.linear.seed);
    if (m.linear.strength < 0) fail("models." + name + ".strength must be nonnegative");
    if (m.linear.epochs < 1) fail("models." + name + ".epochs must be positive");
  } else if (m.kind == "trees") {
    m.trees.n_trees = j.value("n_trees", m.trees.n_trees);
    m.trees.max_depth = j.value("max_depth", m.trees.max_depth);
    m.trees.learning_rate = j.value("learning_rate", m.trees.learning_rate);
    m.trees.lambda = j.value("lambda", m.trees.lambda);
    m.trees.seed = j.value("seed", m.trees.seed);
    if (m.trees.n_trees < 0) fail("models." + name + ".n_trees must be nonnegative");
    if (m.trees.max_depth < 1) fail("models." + name + ".max_depth must be positive");
    if (m.trees.lambda < 0) fail("models." + name + ".lambda must be nonnegative");
  } else if (m.kind == "attention") {
    m.attention.embed_dim = j.value("embed_dim", m.attention.embed_dim);
    m.attention.learning_rate = j.value("learning_rate", m.attention.learning_rate);
    m.attention.epochs = j.value("epochs", m.attention.epochs);
    m.attention.seed = j.value("seed", m.attention.seed);
    if (m.attention.embed_dim < 1) fail("models." + name + ".embed_dim must be positive");
    if (m.attention.epochs < 0) fail("models." + name + ".epochs must be nonnegative");
  } else {
    fail("models." + name + ".kind must be linear, trees or attention");
  }
  return m;
}

}  // namespace

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    fail("invalid JSON in " + path.string() + ": " + e.what());
  }

  RunConfig c;
  if (!j.contains("corpus")) fail("missing 'corpus'");
  c.corpus = j.at("corpus").get<std::string>();
  if (!j.contains("out_dir")) fail("missing 'out_dir'");
  c.out_dir = j.at("out_dir").get<std::string>();

  if (j.contains("split")) {
    const auto& s = j.at("split");
    c.split.train = s.value("train", c.split.train);
    c.split.validation = s.value("validation", c.split.validation);
    c.split.test = s.value("test", c.split.test);
    c.split.seed = s.value("seed", c.split.seed);
  }
  c.min_count = j.value("min_count", c.min_count);
  if (c.min_count < 1) fail("min_count must be positive");

  if (!j.contains("models") || j.at("models").empty()) fail("missing 'models'");
  for (const auto& [name, jm] : j.at("models").items()) {
    if (!valid_name(name)) fail("model name '" + name + "' must match [a-z0-9_]+");
    c.models[name] = parse_model(name, jm);
  }

  if (!j.contains("methods") || j.at("methods").empty()) fail("missing 'methods'");
  for (const auto& m : j.at("methods")) {
    std::string name = m.get<std::string>();
    if (name != "builtin" && name != "lime" && name != "shap")
      fail("methods entries must be builtin, lime or shap");
    if (std::find(c.methods.begin(), c.methods.end(), name) != c.methods.end())
      fail("duplicate method '" + name + "'");
    c.methods.push_back(name);
  }

  if (j.contains("lime")) {
    const auto& l = j.at("lime");
    c.lime.n_samples = l.value("n_samples", c.lime.n_samples);
    c.lime.kernel_width = l.value("kernel_width", c.lime.kernel_width);
    c.lime.sparsity = l.value("sparsity", c.lime.sparsity);
    c.lime.seed = l.value("seed", c.lime.seed);
    if (c.lime.n_samples < 10) fail("lime.n_samples must be at least 10");
    if (c.lime.kernel_width < 0) fail("lime.kernel_width must be nonnegative");
    if (c.lime.sparsity < 1) fail("lime.sparsity must be positive");
  }
  if (j.contains("shap")) {
    const auto& s = j.at("shap");
    c.shap.exact_threshold = s.value("exact_threshold", c.shap.exact_threshold);
    c.shap.n_coalitions = s.value("n_coalitions", c.shap.n_coalitions);
    c.shap.seed = s.value("seed", c.shap.seed);
    if (c.shap.exact_threshold < 1 || c.shap.exact_threshold > 20)
      fail("shap.exact_threshold must be in [1, 20]");
    if (c.shap.n_coalitions < 10) fail("shap.n_coalitions must be at least 10");
  }

  if (!j.contains("k_grid") || j.at("k_grid").empty()) fail("missing 'k_grid'");
  int prev = 0;
  for (const auto& k : j.at("k_grid")) {
    int v = k.get<int>();
    if (v <= prev) fail("k_grid must be strictly increasing positive integers");
    c.k_grid.push_back(v);
    prev = v;
  }

  c.max_test_instances = j.value("max_test_instances", c.max_test_instances);
  if (c.max_test_instances < 0) fail("max_test_instances must be nonnegative");
  c.threads = j.value("threads", c.threads);
  if (c.threads < 0) fail("threads must be nonnegative");
  return c;
}

std::string canonical_config_json(const RunConfig& c) {
  json j;
  j["corpus"] = c.corpus.generic_string();
  j["out_dir"] = c.out_dir.generic_string();
  j["split"] = {{"train", c.split.train},
                {"validation", c.split.validation},
                {"test", c.split.test},
                {"seed", c.split.seed}};
  j["min_count"] = c.min_count;
  json jm = json::object();
  for (const auto& [name, m] : c.models) {
    json e;
    e["kind"] = m.kind;
    if (m.kind == "linear") {
      e["reg"] = m.linear.reg == Regularization::L1 ? "l1" : "l2";
      e["strength"] = m.linear.strength;
      e["epochs"] = m.linear.epochs;
      e["seed"] = m.linear.seed;
    } else if (m.kind == "trees") {
      e["n_trees"] = m.trees.n_trees;
      e["max_depth"] = m.trees.max_depth;
      e["learning_rate"] = m.trees.learning_rate;
      e["lambda"] = m.trees.lambda;
      e["seed"] = m.trees.seed;
    } else {
      e["embed_dim"] = m.attention.embed_dim;
      e["learning_rate"] = m.attention.learning_rate;
      e["epochs"] = m.attention.epochs;
      e["seed"] = m.attention.seed;
    }
    jm[name] = std::move(e);
  }
  j["models"] = std::move(jm);
  j["methods"] = c.methods;
  j["lime"] = {{"n_samples", c.lime.n_samples},
               {"kernel_width", c.lime.kernel_width},
               {"sparsity", c.lime.sparsity},
               {"seed", c.lime.seed}};
  j["shap"] = {{"exact_threshold", c.shap.exact_threshold},
               {"n_coalitions", c.shap.n_coalitions},
               {"seed", c.shap.seed}};
  j["k_grid"] = c.k_grid;
  j["max_test_instances"] = c.max_test_instances;
  j["threads"] = c.threads;
  return j.dump();
}

}  // namespace featsim
