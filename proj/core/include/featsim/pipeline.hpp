#ifndef FEATSIM_PIPELINE_HPP
#define FEATSIM_PIPELINE_HPP

#include <stdexcept>
#include <string>

#include "featsim/config.hpp"

namespace featsim {

// Stage-tagged failure; what() is already prefixed with the stage name.
class PipelineError : public std::runtime_error {
 public:
  PipelineError(std::string stage, const std::string& message)
      : std::runtime_error("[" + stage + "] " + message), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

struct StageOptions {
  bool group_by_agreement = false;   // compare also writes agreement.csv
  bool per_instance_entropy = false; // entropy.csv gains a per-instance column
};

// Stages write their artifacts under config.out_dir and read the artifacts of
// earlier stages from there; a missing prerequisite raises a PipelineError
// naming the stage to run first.
void run_train(const RunConfig& config);
void run_explain(const RunConfig& config);
void run_compare(const RunConfig& config, const StageOptions& options = {});
void run_analyze(const RunConfig& config, const StageOptions& options = {});
void run_report(const RunConfig& config);

// All five stages in order.
void run_all(const RunConfig& config, const StageOptions& options = {});

// FNV-1a 64-bit over bytes, the manifest's config fingerprint.
std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace featsim

#endif
