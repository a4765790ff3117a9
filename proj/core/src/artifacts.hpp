// Shared plumbing for the pipeline stages: artifact paths, prerequisite
// checks, and the combo/pair naming scheme used across the CSV outputs.
#ifndef FEATSIM_SRC_ARTIFACTS_HPP
#define FEATSIM_SRC_ARTIFACTS_HPP

#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "featsim/pipeline.hpp"

namespace featsim::detail {

namespace fs = std::filesystem;

inline fs::path artifact(const RunConfig& config, const std::string& name) {
  return config.out_dir / name;
}

// Missing upstream artifact: tell the user which stage creates it.
inline void require_artifact(const std::string& stage, const fs::path& path,
                             const std::string& producer) {
  if (!fs::exists(path))
    throw PipelineError(stage, "missing " + path.string() + "; run the " + producer +
                                   " stage first");
}

inline std::ofstream open_output(const std::string& stage, const fs::path& path) {
  std::ofstream out(path, std::ios::binary);  // '\n' endings on every platform
  if (!out) throw PipelineError(stage, "cannot write " + path.string());
  return out;
}

inline nlohmann::json read_json_artifact(const std::string& stage, const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw PipelineError(stage, "cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw PipelineError(stage, "invalid JSON in " + path.string() + ": " + e.what());
  }
  return j;
}

// A (model, method) column identity, e.g. "svm_l2×builtin".
inline std::string combo(const std::string& model, const std::string& method) {
  return model + "×" + method;
}

// Unordered pair of combos with a canonical ordering.
inline std::string pair_key(const std::string& a, const std::string& b) {
  return a < b ? a + "|" + b : b + "|" + a;
}

}  // namespace featsim::detail

#endif
