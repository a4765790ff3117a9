#include <cstdio>
#include <exception>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "featsim/align.hpp"
#include "featsim/config.hpp"
#include "featsim/pipeline.hpp"

namespace {

int stage_exit_code(const std::string& stage) {
  static const std::map<std::string, int> codes = {
      {"train", 2}, {"explain", 3}, {"compare", 4}, {"analyze", 5}, {"report", 6}};
  auto it = codes.find(stage);
  return it == codes.end() ? 1 : it->second;
}

void print_alignment_demo(const std::string& text) {
  auto words = featsim::Tokenization::from_text(text);
  if (words.size() == 0) {
    std::cout << "no tokens\n";
    return;
  }
  auto sub = featsim::demo_subword_split(words);
  featsim::WeightVector weights(sub.size(), 1.0);

  std::cout << "subword tokens (weight 1 each):\n";
  for (std::size_t i = 0; i < sub.size(); ++i)
    std::printf("  %-12s (%d,%d)\n", sub.tokens[i].c_str(), sub.spans[i].start,
                sub.spans[i].end);

  double dropped = 0.0;
  auto word_weights = featsim::align_weights(words, sub, weights, &dropped);
  std::cout << "aligned onto words:\n";
  for (std::size_t i = 0; i < words.size(); ++i)
    std::printf("  %-12s (%d,%d)  %.6f\n", words.tokens[i].c_str(), words.spans[i].start,
                words.spans[i].end, word_weights[i]);
  std::printf("dropped mass: %.6f\n", dropped);

  std::cout << "per-type averages:\n";
  for (const auto& [type, w] : featsim::aggregate_subword_to_word(words, sub, weights))
    std::printf("  %-12s %.6f\n", type.c_str(), w);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"per-instance feature importance for small text classifiers, plus"
               " agreement metrics between models and attribution methods"};
  app.require_subcommand(1);

  std::string config_path;
  featsim::StageOptions options;

  auto add_stage = [&](const std::string& name, const std::string& help) {
    CLI::App* cmd = app.add_subcommand(name, help);
    cmd->add_option("-c,--config", config_path, "JSON run configuration")->required();
    return cmd;
  };

  auto* train = add_stage("train", "split the corpus, train every model, score accuracy");
  auto* explain = add_stage("explain", "write per-instance importance scores for every model and method");
  auto* compare = add_stage("compare", "top-k overlap between every pair of (model, method) columns");
  compare->add_flag("--group-by-agreement", options.group_by_agreement,
                    "also split pair similarity by prediction agreement");
  auto* analyze = add_stage("analyze", "rank correlations, selection entropy and pos distributions");
  analyze->add_flag("--per-instance-entropy", options.per_instance_entropy,
                    "add a per-instance entropy column");
  auto* report = add_stage("report", "manifest and human-readable summary");
  auto* run = add_stage("run", "all stages in order");
  run->add_flag("--group-by-agreement", options.group_by_agreement,
                "also split pair similarity by prediction agreement");
  run->add_flag("--per-instance-entropy", options.per_instance_entropy,
                "add a per-instance entropy column");

  std::string text;
  auto* align_debug = app.add_subcommand("align-debug",
                                         "show the demo subword split and weight re-alignment");
  align_debug->add_option("-t,--text", text, "text to tokenize")->required();

  CLI11_PARSE(app, argc, argv);

  if (align_debug->parsed()) {
    print_alignment_demo(text);
    return 0;
  }

  featsim::RunConfig config;
  try {
    config = featsim::load_config(config_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    if (train->parsed()) featsim::run_train(config);
    if (explain->parsed()) featsim::run_explain(config);
    if (compare->parsed()) featsim::run_compare(config, options);
    if (analyze->parsed()) featsim::run_analyze(config, options);
    if (report->parsed()) featsim::run_report(config);
    if (run->parsed()) featsim::run_all(config, options);
  } catch (const featsim::PipelineError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return stage_exit_code(e.stage());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
