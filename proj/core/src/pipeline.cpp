#include "featsim/pipeline.hpp"

#include <algorithm>
#include <exception>
#include <thread>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "artifacts.hpp"
#include "featsim/corpus.hpp"
#include "featsim/explain.hpp"
#include "featsim/importance.hpp"
#include "featsim/metrics.hpp"
#include "featsim/model_io.hpp"
#include "featsim/models.hpp"
#include "util.hpp"

namespace featsim {

namespace fs = std::filesystem;
using nlohmann::json;
using detail::artifact;
using detail::open_output;
using detail::read_json_artifact;
using detail::require_artifact;

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

constexpr int kMaxExplainTypes = 30;

std::vector<Document> load_corpus_checked(const std::string& stage, const RunConfig& config) {
  try {
    return load_corpus(config.corpus);
  } catch (const std::exception& e) {
    throw PipelineError(stage, e.what());
  }
}

TrainedModel train_one(const std::string& name, const ModelConfig& mc,
                       std::span<const Document> train_docs,
                       const std::shared_ptr<const Vocabulary>& vocab) {
  if (mc.kind == "linear")
    return TrainedModel(name, vocab, train_linear(train_docs, *vocab, mc.linear));
  if (mc.kind == "trees")
    return TrainedModel(name, vocab, train_trees(train_docs, *vocab, mc.trees));
  return TrainedModel(name, vocab, train_attention(train_docs, *vocab, mc.attention));
}

std::vector<Document> capped_test(const RunConfig& config, std::vector<Document> test) {
  if (config.max_test_instances > 0 &&
      static_cast<int>(test.size()) > config.max_test_instances)
    test.resize(static_cast<std::size_t>(config.max_test_instances));
  return test;
}

// Per-instance explainer seed: independent of threading and stable across
// runs, distinct across (instance, model, method).
std::uint64_t instance_seed(std::uint64_t base, const std::string& id, const std::string& model,
                            const std::string& method) {
  return base ^ fnv1a64(id + "\x1f" + model + "\x1f" + method);
}

}  // namespace

void run_train(const RunConfig& config) {
  const std::string stage = "train";
  auto docs = load_corpus_checked(stage, config);
  if (docs.empty()) throw PipelineError(stage, "corpus is empty: " + config.corpus.string());

  SplitResult parts;
  try {
    parts = split(std::move(docs), config.split);
  } catch (const std::exception& e) {
    throw PipelineError(stage, e.what());
  }
  if (parts.train.empty() || parts.test.empty())
    throw PipelineError(stage, "split produced an empty train or test part");

  std::error_code ec;
  fs::create_directories(artifact(config, "models"), ec);
  if (ec) throw PipelineError(stage, "cannot create " + config.out_dir.string());

  {
    json j;
    auto ids = [](const std::vector<Document>& part) {
      std::vector<std::string> out;
      out.reserve(part.size());
      for (const auto& d : part) out.push_back(d.id);
      return out;
    };
    j["train"] = ids(parts.train);
    j["validation"] = ids(parts.validation);
    j["test"] = ids(parts.test);
    open_output(stage, artifact(config, "splits.json")) << j.dump(2) << '\n';
  }

  auto vocab = std::make_shared<const Vocabulary>(build_vocabulary(parts.train, config.min_count));
  if (vocab->size() == 0)
    throw PipelineError(stage, "vocabulary is empty; lower min_count or use more data");
  try {
    save_vocabulary(*vocab, artifact(config, "vocab.json"));
  } catch (const std::exception& e) {
    throw PipelineError(stage, e.what());
  }

  std::vector<TrainedModel> models;
  for (const auto& [name, mc] : config.models) {
    try {
      models.push_back(train_one(name, mc, parts.train, vocab));
      save_model(models.back(), artifact(config, "models/" + name + ".json"));
    } catch (const PipelineError&) {
      throw;
    } catch (const std::exception& e) {
      throw PipelineError(stage, "training " + name + ": " + e.what());
    }
  }

  {
    auto out = open_output(stage, artifact(config, "accuracy.csv"));
    out << "model,split,accuracy\n";
    auto row = [&](const std::string& name, const std::string& part, double v) {
      out << name << ',' << part << ',' << format_double(v) << '\n';
    };
    for (const auto& m : models) {
      row(m.name(), "train", accuracy(m, parts.train));
      if (!parts.validation.empty()) row(m.name(), "validation", accuracy(m, parts.validation));
      row(m.name(), "test", accuracy(m, parts.test));
    }
    int positives = 0;
    for (const auto& d : parts.train) positives += d.label;
    const int majority = 2 * positives >= static_cast<int>(parts.train.size()) ? 1 : 0;
    auto majority_acc = [&](const std::vector<Document>& part) {
      int correct = 0;
      for (const auto& d : part) correct += d.label == majority;
      return static_cast<double>(correct) / static_cast<double>(part.size());
    };
    row("majority", "train", majority_acc(parts.train));
    if (!parts.validation.empty()) row("majority", "validation", majority_acc(parts.validation));
    row("majority", "test", majority_acc(parts.test));
  }

  auto test = capped_test(config, parts.test);
  {
    auto out = open_output(stage, artifact(config, "instances.csv"));
    out << "instance_id,length,ttr,label\n";
    for (const auto& d : test)
      out << d.id << ',' << d.tokens.size() << ',' << format_double(type_token_ratio(d)) << ','
          << d.label << '\n';
  }
  {
    auto out = open_output(stage, artifact(config, "predictions.csv"));
    out << "instance_id,model,proba,predicted,label\n";
    for (const auto& m : models)
      for (const auto& d : test)
        out << d.id << ',' << m.name() << ',' << format_double(m.predict_proba(d)) << ','
            << m.predict_label(d) << ',' << d.label << '\n';
  }
}

namespace {

struct ExplainContext {
  const RunConfig& config;
  std::vector<Document> docs;  // explained instances, splits.json order
  std::vector<TrainedModel> models;
  std::vector<PredictFn> predictors;
};

std::vector<ImportanceVector> explain_instance(const ExplainContext& ctx, const Document& doc) {
  std::vector<ImportanceVector> out;
  for (std::size_t m = 0; m < ctx.models.size(); ++m) {
    const auto& model = ctx.models[m];
    for (const auto& method : ctx.config.methods) {
      ImportanceVector iv;
      iv.instance_id = doc.id;
      iv.model = model.name();
      iv.method = method;
      if (method == "builtin") {
        iv.scores = model.builtin_importance(doc);
      } else if (method == "lime") {
        LimeConfig cfg = ctx.config.lime;
        cfg.seed = instance_seed(ctx.config.lime.seed, doc.id, model.name(), method);
        iv.scores = explain_lime(ctx.predictors[m], doc, cfg);
      } else {
        ShapConfig cfg = ctx.config.shap;
        cfg.seed = instance_seed(ctx.config.shap.seed, doc.id, model.name(), method);
        iv.scores = explain_kernel_shap(ctx.predictors[m], doc, cfg);
      }
      out.push_back(std::move(iv));
    }
  }
  return out;
}

}  // namespace

void run_explain(const RunConfig& config) {
  const std::string stage = "explain";
  require_artifact(stage, artifact(config, "splits.json"), "train");
  require_artifact(stage, artifact(config, "vocab.json"), "train");

  std::shared_ptr<const Vocabulary> vocab;
  try {
    vocab = load_vocabulary(artifact(config, "vocab.json"));
  } catch (const std::exception& e) {
    throw PipelineError(stage, e.what());
  }

  ExplainContext ctx{config, {}, {}, {}};
  for (const auto& [name, mc] : config.models) {
    auto path = artifact(config, "models/" + name + ".json");
    require_artifact(stage, path, "train");
    try {
      ctx.models.push_back(load_model(path, vocab));
    } catch (const std::exception& e) {
      throw PipelineError(stage, e.what());
    }
  }
  for (const auto& m : ctx.models) ctx.predictors.push_back(m.predictor());

  auto corpus = load_corpus_checked(stage, config);
  std::unordered_map<std::string, const Document*> by_id;
  for (const auto& d : corpus) by_id[d.id] = &d;

  auto splits = read_json_artifact(stage, artifact(config, "splits.json"));
  std::vector<Document> test;
  for (const auto& id : splits.at("test")) {
    auto it = by_id.find(id.get<std::string>());
    if (it == by_id.end())
      throw PipelineError(stage, "instance " + id.get<std::string>() +
                                     " from splits.json is not in the corpus");
    test.push_back(*it->second);
  }
  test = capped_test(config, std::move(test));

  const bool wants_builtin =
      std::find(config.methods.begin(), config.methods.end(), "builtin") != config.methods.end();
  const bool wants_perturbation =
      std::find(config.methods.begin(), config.methods.end(), "lime") != config.methods.end() ||
      std::find(config.methods.begin(), config.methods.end(), "shap") != config.methods.end();

  std::map<std::string, std::string> exclusions;
  for (const auto& d : test) {
    bool in_vocab = false;
    for (const auto& tok : d.tokens)
      if (vocab->index_of(tok)) {
        in_vocab = true;
        break;
      }
    const int n_unique = static_cast<int>(unique_types(d).size());
    if (wants_builtin && !in_vocab) {
      exclusions[d.id] = "no in-vocabulary types";
    } else if (wants_perturbation && n_unique > kMaxExplainTypes) {
      exclusions[d.id] = "too many unique types (" + std::to_string(n_unique) + " > " +
                         std::to_string(kMaxExplainTypes) + ")";
    }
  }
  {
    json j = json::object();
    for (const auto& [id, reason] : exclusions) j[id] = reason;
    open_output(stage, artifact(config, "exclusions.json")) << j.dump(2) << '\n';
  }

  for (const auto& d : test)
    if (!exclusions.count(d.id)) ctx.docs.push_back(d);

  const std::size_t n = ctx.docs.size();
  std::vector<std::vector<ImportanceVector>> results(n);
  unsigned threads = config.threads > 0 ? static_cast<unsigned>(config.threads)
                                        : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, n == 0 ? 1 : static_cast<unsigned>(n));

  if (threads <= 1) {
    try {
      for (std::size_t i = 0; i < n; ++i) results[i] = explain_instance(ctx, ctx.docs[i]);
    } catch (const std::exception& e) {
      throw PipelineError(stage, e.what());
    }
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t i = t; i < n; i += threads)
            results[i] = explain_instance(ctx, ctx.docs[i]);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& err : errors) {
      if (!err) continue;
      try {
        std::rethrow_exception(err);
      } catch (const std::exception& e) {
        throw PipelineError(stage, e.what());
      }
    }
  }

  auto out = open_output(stage, artifact(config, "explanations.jsonl"));
  for (const auto& per_doc : results) {
    for (const auto& iv : per_doc) {
      json j;
      j["instance_id"] = iv.instance_id;
      j["model"] = iv.model;
      j["method"] = iv.method;
      j["scores"] = iv.scores;
      out << j.dump() << '\n';
    }
  }
}

void run_all(const RunConfig& config, const StageOptions& options) {
  run_train(config);
  run_explain(config);
  run_compare(config, options);
  run_analyze(config, options);
  run_report(config);
}

}  // namespace featsim
