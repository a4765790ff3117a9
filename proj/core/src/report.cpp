#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "artifacts.hpp"
#include "featsim/corpus.hpp"
#include "featsim/metrics.hpp"
#include "featsim/pipeline.hpp"
#include "util.hpp"

namespace featsim {

namespace fs = std::filesystem;
using nlohmann::json;
using detail::artifact;
using detail::combo;
using detail::open_output;
using detail::pair_key;
using detail::read_json_artifact;
using detail::require_artifact;

namespace {

struct Combo {
  std::string model;
  std::string method;
  std::string name;
};

std::vector<Combo> list_combos(const RunConfig& config) {
  std::vector<Combo> out;
  for (const auto& [model, mc] : config.models)
    for (const auto& method : config.methods) out.push_back({model, method, combo(model, method)});
  return out;
}

struct Explanations {
  std::vector<std::string> instances;  // file order
  // instance -> combo -> scores
  std::unordered_map<std::string, std::unordered_map<std::string, std::map<std::string, double>>>
      scores;
};

Explanations load_explanations(const std::string& stage, const RunConfig& config) {
  auto path = artifact(config, "explanations.jsonl");
  require_artifact(stage, path, "explain");
  std::ifstream in(path);
  if (!in) throw PipelineError(stage, "cannot open " + path.string());
  Explanations out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw PipelineError(stage, "explanations.jsonl line " + std::to_string(line_no) + ": " +
                                     e.what());
    }
    const std::string id = j.at("instance_id").get<std::string>();
    if (!out.scores.count(id)) out.instances.push_back(id);
    out.scores[id][combo(j.at("model").get<std::string>(), j.at("method").get<std::string>())] =
        j.at("scores").get<std::map<std::string, double>>();
  }
  return out;
}

std::vector<std::vector<std::string>> read_csv(const std::string& stage, const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw PipelineError(stage, "cannot open " + path.string());
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      std::size_t pos = line.find(',', start);
      if (pos == std::string::npos) {
        fields.push_back(line.substr(start));
        break;
      }
      fields.push_back(line.substr(start, pos - start));
      start = pos + 1;
    }
    rows.push_back(std::move(fields));
  }
  return rows;
}

std::string to_hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::set<std::string> as_set(const std::vector<std::string>& v) {
  return std::set<std::string>(v.begin(), v.end());
}

}  // namespace

void run_compare(const RunConfig& config, const StageOptions& options) {
  const std::string stage = "compare";
  auto ex = load_explanations(stage, config);
  auto combos = list_combos(config);

  struct Pair {
    Combo a, b;
    std::string key;
  };
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < combos.size(); ++i)
    for (std::size_t j = i + 1; j < combos.size(); ++j)
      pairs.push_back({combos[i], combos[j], pair_key(combos[i].name, combos[j].name)});

  // top-k selections per (instance, combo, k), shared by every pair
  std::unordered_map<std::string, std::unordered_map<std::string, std::map<int, std::set<std::string>>>>
      tops;
  for (const auto& id : ex.instances) {
    for (const auto& c : combos) {
      auto it = ex.scores[id].find(c.name);
      if (it == ex.scores[id].end()) continue;
      for (int k : config.k_grid) tops[id][c.name][k] = as_set(top_k(it->second, k));
    }
  }

  std::map<std::string, std::map<int, std::vector<double>>> by_pair_k;
  std::map<std::string, std::map<int, std::map<std::string, double>>> by_pair_k_instance;
  {
    auto out = open_output(stage, artifact(config, "records.csv"));
    out << "instance_id,pair,k,jaccard\n";
    for (const auto& id : ex.instances) {
      for (const auto& p : pairs) {
        auto ia = tops[id].find(p.a.name);
        auto ib = tops[id].find(p.b.name);
        if (ia == tops[id].end() || ib == tops[id].end()) continue;
        for (int k : config.k_grid) {
          double j = jaccard(ia->second[k], ib->second[k]);
          out << id << ',' << p.key << ',' << k << ',' << format_double(j) << '\n';
          by_pair_k[p.key][k].push_back(j);
          by_pair_k_instance[p.key][k][id] = j;
        }
      }
    }
  }

  {
    auto out = open_output(stage, artifact(config, "similarity_vs_k.csv"));
    out << "pair,k,mean,stderr,n\n";
    for (const auto& p : pairs) {
      for (int k : config.k_grid) {
        const auto& values = by_pair_k[p.key][k];
        if (values.empty()) continue;
        auto ms = mean_stderr(values);
        out << p.key << ',' << k << ',' << format_double(ms.mean) << ','
            << format_double(ms.stderr_) << ',' << ms.n << '\n';
      }
    }
  }

  {
    const int k_max = *std::max_element(config.k_grid.begin(), config.k_grid.end());
    auto out = open_output(stage, artifact(config, "heatmap_k" + std::to_string(k_max) + ".csv"));
    out << "combo";
    for (const auto& c : combos) out << ',' << c.name;
    out << '\n';
    for (std::size_t i = 0; i < combos.size(); ++i) {
      out << combos[i].name;
      for (std::size_t j = 0; j < combos.size(); ++j) {
        if (i == j) {
          out << ",1";
          continue;
        }
        const auto& values = by_pair_k[pair_key(combos[i].name, combos[j].name)][k_max];
        if (values.empty())
          out << ',';
        else
          out << ',' << format_double(mean_stderr(values).mean);
      }
      out << '\n';
    }
  }

  if (options.group_by_agreement) {
    auto pred_path = artifact(config, "predictions.csv");
    require_artifact(stage, pred_path, "train");
    std::unordered_map<std::string, int> predicted;  // instance|model -> label
    for (auto& row : read_csv(stage, pred_path)) {
      if (row.size() < 5 || row[0] == "instance_id") continue;
      predicted[row[0] + "|" + row[1]] = std::stoi(row[3]);
    }
    auto out = open_output(stage, artifact(config, "agreement.csv"));
    out << "pair,group,k,mean,stderr,n\n";
    for (const auto& p : pairs) {
      for (const std::string group : {"agree", "disagree"}) {
        for (int k : config.k_grid) {
          std::vector<double> values;
          for (const auto& [id, j] : by_pair_k_instance[p.key][k]) {
            auto pa = predicted.find(id + "|" + p.a.model);
            auto pb = predicted.find(id + "|" + p.b.model);
            if (pa == predicted.end() || pb == predicted.end()) continue;
            bool agree = pa->second == pb->second;
            if (agree == (group == "agree")) values.push_back(j);
          }
          if (values.empty()) continue;
          auto ms = mean_stderr(values);
          out << p.key << ',' << group << ',' << k << ',' << format_double(ms.mean) << ','
              << format_double(ms.stderr_) << ',' << ms.n << '\n';
        }
      }
    }
  }
}

namespace {

// majority pos tag of each type within one document; ties take the
// lexicographically smaller tag
std::map<std::string, std::string> majority_tags(const Document& doc) {
  std::map<std::string, std::map<std::string, int>> counts;
  for (std::size_t i = 0; i < doc.tokens.size(); ++i)
    ++counts[doc.tokens[i]][(*doc.pos_tags)[i]];
  std::map<std::string, std::string> out;
  for (auto& [type, tags] : counts) {
    const std::string* best = nullptr;
    int best_count = -1;
    for (auto& [tag, count] : tags) {
      if (count > best_count) {  // map order makes ties lexicographic
        best_count = count;
        best = &tag;
      }
    }
    out[type] = *best;
  }
  return out;
}

std::map<std::string, double> normalize(const std::map<std::string, int>& counts) {
  double total = 0;
  for (auto& [k, v] : counts) total += v;
  std::map<std::string, double> out;
  for (auto& [k, v] : counts) out[k] = v / total;
  return out;
}

}  // namespace

void run_analyze(const RunConfig& config, const StageOptions& options) {
  const std::string stage = "analyze";
  auto ex = load_explanations(stage, config);
  auto combos = list_combos(config);

  {
    auto out = open_output(stage, artifact(config, "correlations.csv"));
    out << "pair,mean_spearman,stderr,n\n";
    for (std::size_t i = 0; i < combos.size(); ++i) {
      for (std::size_t j = i + 1; j < combos.size(); ++j) {
        std::vector<double> rhos;
        for (const auto& id : ex.instances) {
          auto ia = ex.scores[id].find(combos[i].name);
          auto ib = ex.scores[id].find(combos[j].name);
          if (ia == ex.scores[id].end() || ib == ex.scores[id].end()) continue;
          std::set<std::string> keys;
          for (auto& [t, v] : ia->second) keys.insert(t);
          for (auto& [t, v] : ib->second) keys.insert(t);
          std::vector<double> a, b;
          for (const auto& t : keys) {
            auto va = ia->second.find(t);
            auto vb = ib->second.find(t);
            a.push_back(va == ia->second.end() ? 0.0 : va->second);
            b.push_back(vb == ib->second.end() ? 0.0 : vb->second);
          }
          try {
            rhos.push_back(spearman(a, b));
          } catch (const std::exception&) {
            // constant ranks on either side: correlation undefined, skip
          }
        }
        if (rhos.empty()) continue;
        auto ms = mean_stderr(rhos);
        out << pair_key(combos[i].name, combos[j].name) << ',' << format_double(ms.mean) << ','
            << format_double(ms.stderr_) << ',' << ms.n << '\n';
      }
    }
  }

  {
    auto out = open_output(stage, artifact(config, "entropy.csv"));
    out << "model,method,k,entropy";
    if (options.per_instance_entropy) out << ",per_instance";
    out << '\n';
    for (const auto& c : combos) {
      for (int k : config.k_grid) {
        std::vector<std::vector<std::string>> selections;
        for (const auto& id : ex.instances) {
          auto it = ex.scores[id].find(c.name);
          if (it == ex.scores[id].end()) continue;
          selections.push_back(top_k(it->second, k));
        }
        if (selections.empty()) continue;
        out << c.model << ',' << c.method << ',' << k << ','
            << format_double(selection_entropy(selections));
        if (options.per_instance_entropy)
          out << ',' << format_double(per_instance_entropy(selections));
        out << '\n';
      }
    }
  }

  // pos distributions need the raw documents
  require_artifact(stage, artifact(config, "splits.json"), "train");
  auto corpus = [&] {
    try {
      return load_corpus(config.corpus);
    } catch (const std::exception& e) {
      throw PipelineError(stage, e.what());
    }
  }();
  std::unordered_map<std::string, const Document*> by_id;
  for (const auto& d : corpus) by_id[d.id] = &d;

  auto splits = read_json_artifact(stage, artifact(config, "splits.json"));
  std::vector<const Document*> test;
  for (const auto& id : splits.at("test")) {
    auto it = by_id.find(id.get<std::string>());
    if (it == by_id.end())
      throw PipelineError(stage, "instance " + id.get<std::string>() +
                                     " from splits.json is not in the corpus");
    test.push_back(it->second);
  }
  if (config.max_test_instances > 0 &&
      static_cast<int>(test.size()) > config.max_test_instances)
    test.resize(static_cast<std::size_t>(config.max_test_instances));

  std::map<std::string, int> background_counts;
  std::unordered_map<std::string, std::map<std::string, std::string>> tag_by_instance_type;
  for (const Document* d : test) {
    if (!d->pos_tags) continue;
    for (const auto& tag : *d->pos_tags) ++background_counts[tag];
    tag_by_instance_type[d->id] = majority_tags(*d);
  }

  auto pos_out = open_output(stage, artifact(config, "pos.csv"));
  pos_out << "scope,model,method,k,tag,proportion\n";
  auto js_out = open_output(stage, artifact(config, "js.csv"));
  js_out << "model,method,k,js_distance\n";

  if (!background_counts.empty()) {
    auto background = normalize(background_counts);
    for (auto& [tag, p] : background)
      pos_out << "background,-,-,0," << tag << ',' << format_double(p) << '\n';

    for (const auto& c : combos) {
      for (int k : config.k_grid) {
        std::map<std::string, int> counts;
        for (const auto& id : ex.instances) {
          auto tags = tag_by_instance_type.find(id);
          if (tags == tag_by_instance_type.end()) continue;
          auto it = ex.scores[id].find(c.name);
          if (it == ex.scores[id].end()) continue;
          for (const auto& type : top_k(it->second, k)) {
            auto tag = tags->second.find(type);
            if (tag != tags->second.end()) ++counts[tag->second];
          }
        }
        if (counts.empty()) continue;
        auto dist = normalize(counts);
        for (auto& [tag, p] : dist)
          pos_out << "selection," << c.model << ',' << c.method << ',' << k << ',' << tag << ','
                  << format_double(p) << '\n';
        js_out << c.model << ',' << c.method << ',' << k << ','
               << format_double(js_distance(dist, background)) << '\n';
      }
    }
  }
}

void run_report(const RunConfig& config) {
  const std::string stage = "report";
  require_artifact(stage, artifact(config, "accuracy.csv"), "train");
  require_artifact(stage, artifact(config, "exclusions.json"), "explain");
  require_artifact(stage, artifact(config, "similarity_vs_k.csv"), "compare");
  require_artifact(stage, artifact(config, "entropy.csv"), "analyze");

  const int k_max = *std::max_element(config.k_grid.begin(), config.k_grid.end());

  std::vector<std::string> candidates = {"splits.json",
                                         "vocab.json",
                                         "accuracy.csv",
                                         "instances.csv",
                                         "predictions.csv",
                                         "exclusions.json",
                                         "explanations.jsonl",
                                         "records.csv",
                                         "similarity_vs_k.csv",
                                         "heatmap_k" + std::to_string(k_max) + ".csv",
                                         "agreement.csv",
                                         "correlations.csv",
                                         "entropy.csv",
                                         "pos.csv",
                                         "js.csv"};
  for (const auto& [name, mc] : config.models) candidates.push_back("models/" + name + ".json");
  std::sort(candidates.begin(), candidates.end());

  json manifest;
  manifest["config_hash"] = to_hex(fnv1a64(canonical_config_json(config)));
  json files = json::object();
  for (const auto& name : candidates) {
    auto path = artifact(config, name);
    if (!fs::exists(path)) continue;
    std::ifstream in(path, std::ios::binary);
    std::ostringstream body;
    body << in.rdbuf();
    files[name] = {{"bytes", body.str().size()}, {"fnv1a64", to_hex(fnv1a64(body.str()))}};
  }
  manifest["files"] = std::move(files);
  manifest["exclusions"] = read_json_artifact(stage, artifact(config, "exclusions.json"));
  open_output(stage, artifact(config, "manifest.json")) << manifest.dump(2) << '\n';

  auto report = open_output(stage, artifact(config, "report.md"));
  report << "# Feature importance similarity run\n\n";

  report << "## Accuracy\n\n| model | split | accuracy |\n|---|---|---|\n";
  for (auto& row : read_csv(stage, artifact(config, "accuracy.csv"))) {
    if (row.size() < 3 || row[0] == "model") continue;
    report << "| " << row[0] << " | " << row[1] << " | " << row[2] << " |\n";
  }

  const auto& exclusions = manifest["exclusions"];
  report << "\n## Exclusions\n\n" << exclusions.size()
         << " instance(s) were excluded from explanation.\n";

  report << "\n## Pair similarity at k=" << k_max << "\n\n| pair | mean | stderr | n |\n|---|---|---|---|\n";
  std::vector<std::vector<std::string>> sim_rows;
  for (auto& row : read_csv(stage, artifact(config, "similarity_vs_k.csv"))) {
    if (row.size() < 5 || row[0] == "pair") continue;
    if (row[1] == std::to_string(k_max)) sim_rows.push_back(row);
  }
  std::sort(sim_rows.begin(), sim_rows.end(), [](const auto& a, const auto& b) {
    double ma = std::stod(a[2]), mb = std::stod(b[2]);
    if (ma != mb) return ma > mb;
    return a[0] < b[0];
  });
  for (auto& row : sim_rows)
    report << "| " << row[0] << " | " << row[2] << " | " << row[3] << " | " << row[4] << " |\n";

  report << "\n## Selection entropy at k=" << k_max << "\n\n| model | method | entropy (bits) |\n|---|---|---|\n";
  for (auto& row : read_csv(stage, artifact(config, "entropy.csv"))) {
    if (row.size() < 4 || row[0] == "model") continue;
    if (row[2] == std::to_string(k_max)) report << "| " << row[0] << " | " << row[1] << " | " << row[3] << " |\n";
  }
}

}  // namespace featsim
