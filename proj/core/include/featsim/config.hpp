#ifndef FEATSIM_CONFIG_HPP
#define FEATSIM_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "featsim/corpus.hpp"
#include "featsim/explain.hpp"
#include "featsim/models.hpp"

namespace featsim {

struct ModelConfig {
  std::string kind;  // "linear", "trees" or "attention"
  LinearHyper linear;
  TreeHyper trees;
  AttentionHyper attention;
};

struct RunConfig {
  std::filesystem::path corpus;
  std::filesystem::path out_dir;
  SplitSpec split;
  int min_count = 2;
  std::map<std::string, ModelConfig> models;   // name -> config, name order fixed
  std::vector<std::string> methods;            // subset of builtin/lime/shap
  LimeConfig lime;
  ShapConfig shap;
  std::vector<int> k_grid;
  int max_test_instances = 0;  // 0 = no cap
  int threads = 0;             // 0 = hardware concurrency
};

// Parses and validates a JSON config file. Throws std::runtime_error with a
// message naming the offending key.
RunConfig load_config(const std::filesystem::path& path);

// Canonical JSON dump of the config (sorted keys, fixed float formatting),
// the basis of the manifest hash.
std::string canonical_config_json(const RunConfig& config);

}  // namespace featsim

#endif
