// Copyright 2026 The kgmatch Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "kgmatch/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "kgmatch/analyzer.hpp"
#include "kgmatch/error.hpp"
#include "kgmatch/extractor.hpp"
#include "kgmatch/kg_store.hpp"
#include "kgmatch/ks_emit.hpp"
#include "kgmatch/lexicon.hpp"
#include "kgmatch/manifest.hpp"
#include "kgmatch/probes.hpp"
#include "kgmatch/text.hpp"
#include "kgmatch/wikihow.hpp"

namespace kgmatch::cli {
namespace fs = std::filesystem;
namespace {

struct Resources {
  std::string dir = default_resource_dir().string();
  std::string stopwords;  // defaults to <dir>/stopwords.txt

  Tokenizer tokenizer() const {
    return Tokenizer::from_file(stopwords.empty() ? fs::path(dir) / "stopwords.txt" : fs::path(stopwords));
  }
  LexicalResource lexicon() const { return LexicalResource::load(fs::path(dir) / "lexicon"); }
  Json json() const { return Json{{"resources", dir}, {"stopwords", stopwords}}; }
};

void add_resource_options(CLI::App* app, Resources& r) {
  app->add_option("--resources", r.dir, "Directory holding stopwords.txt and lexicon/");
  app->add_option("--stopwords", r.stopwords, "Stopword list overriding the shipped one");
}

template <typename T, typename Parse>
T parse_flag(const std::string& value, const char* flag, Parse parse) {
  if (auto v = parse(value)) return *v;
  throw UsageError(fmt::format("bad value '{}' for {}", value, flag));
}

std::string records_jsonl(const std::vector<Json>& records) { return to_jsonl(records); }

template <typename T>
std::vector<Json> as_json(const std::vector<T>& items) {
  std::vector<Json> out;
  out.reserve(items.size());
  for (const auto& i : items) out.push_back(to_json(i));
  return out;
}

void write_records(const fs::path& dir, const std::string& name, const std::vector<Json>& records,
                   Manifest& manifest) {
  write_file(dir / name, records_jsonl(records));
  manifest.add_output(dir, name, static_cast<long>(records.size()));
}

void write_text(const fs::path& dir, const std::string& name, const std::string& text, Manifest& manifest) {
  write_file(dir / name, text);
  manifest.add_output(dir, name);
}

std::unordered_set<std::string> split_list(const std::string& s) {
  std::unordered_set<std::string> out;
  for (auto& part : split(s, ',')) {
    auto t = std::string(trim(part));
    if (!t.empty()) out.insert(t);
  }
  return out;
}

std::string fmt_percent(const std::optional<int>& p) { return p ? fmt::format("{}%", *p) : "-"; }

// --- convert-atomic --------------------------------------------------------

struct ConvertOptions {
  std::vector<std::string> inputs;
  std::string default_split = "all";
  std::string out;
  bool force = false;
};

int run_convert(const ConvertOptions& o, std::ostream& out) {
  const Json config{{"default_split", o.default_split}};
  check_manifest_conflict(o.out, "convert-atomic", config, o.force);
  std::map<std::string, std::vector<EventInferencePair>> merged;
  Manifest manifest("convert-atomic", config, 0);
  for (const auto& in : o.inputs) {
    auto converted = convert_atomic_csv(read_file(in), in, o.default_split);
    for (auto& [split, pairs] : converted) {
      auto& bucket = merged[split];
      for (auto& p : pairs) {
        p.pair_id = static_cast<std::uint32_t>(bucket.size());
        bucket.push_back(std::move(p));
      }
    }
    manifest.add_input("atomic-csv", in);
  }
  for (const auto& [split, pairs] : merged) {
    std::ostringstream body;
    write_pair_tsv(body, pairs);
    write_file(fs::path(o.out) / (split + ".tsv"), body.str());
    manifest.add_output(o.out, split + ".tsv", static_cast<long>(pairs.size()));
    out << fmt::format("{}: {} pairs\n", split, pairs.size());
  }
  manifest.write(o.out);
  return kExitOk;
}

// --- load-check ------------------------------------------------------------

struct LoadCheckOptions {
  std::string pairs;
  std::string edges;
  std::string edge_format = "edge-tsv";
  std::string relation_blocklist;
};

int run_load_check(const LoadCheckOptions& o, std::ostream& out, std::ostream& err) {
  if (o.pairs.empty() == o.edges.empty()) throw UsageError("give exactly one of --pairs or --edges");
  LoadReport report;
  if (!o.pairs.empty()) {
    const auto corpus = load_pair_corpus(o.pairs, &report);
    std::map<Dimension, std::size_t> per_dim;
    for (const auto& p : corpus.pairs) ++per_dim[p.dimension];
    out << fmt::format("pairs: {}\nskipped: {}\n", corpus.pairs.size(), report.skipped);
    for (auto d : kAllDimensions) out << fmt::format("{}: {}\n", to_string(d), per_dim[d]);
  } else {
    const auto format = parse_flag<EdgeFormat>(o.edge_format, "--edge-format",
                                               [](const std::string& s) { return parse_edge_format(s); });
    EdgeLoadOptions options{split_list(o.relation_blocklist)};
    const auto graph = load_edge_graph(o.edges, format, options, &report);
    out << fmt::format("nodes: {}\nedges: {}\nskipped: {}\n", graph.nodes().size(),
                       graph.edges().size(), report.skipped);
  }
  for (const auto& w : report.warnings) err << "warning: " << w << '\n';
  return kExitOk;
}

// --- extract ---------------------------------------------------------------

struct ExtractOptions {
  std::string kg;
  std::string conditioning;
  std::string shape;
  std::string filter;
  std::size_t pool_size = 50;
  std::size_t atomic_subgraph_cap = 3;
  std::size_t edge_subgraph_cap = 5;
  std::uint64_t seed = 0;
  bool no_random = false;
  std::string path_score = "sum";
  std::string tasks;
  std::string pairs;
  std::string edges;
  std::string edge_format = "edge-tsv";
  std::string graph_dir;
  std::string relation_blocklist;
  Resources resources;
  unsigned jobs = 1;
  std::string out;
  bool force = false;
};

ExtractionConfig config_of(const ExtractOptions& o) {
  ExtractionConfig c;
  c.kg = parse_flag<KgKind>(o.kg, "--kg", parse_kg_kind);
  c.conditioning = parse_flag<Conditioning>(o.conditioning, "--conditioning", parse_conditioning);
  c.shape = parse_flag<Shape>(o.shape, "--shape", parse_shape);
  c.filter = parse_flag<FilterMode>(o.filter, "--filter", parse_filter);
  c.pool_size = o.pool_size;
  c.atomic_subgraph_cap = o.atomic_subgraph_cap;
  c.edge_subgraph_cap = o.edge_subgraph_cap;
  c.seed = o.seed;
  c.random_triples = !o.no_random;
  c.path_score = parse_flag<PathScore>(o.path_score, "--path-score", parse_path_score);
  c.validate();
  return c;
}

int run_extract(const ExtractOptions& o, std::ostream& out) {
  const auto config = config_of(o);
  Json run_config = to_json(config);
  run_config["edge_format"] = o.edge_format;
  run_config["relation_blocklist"] = o.relation_blocklist;
  run_config.update(o.resources.json());
  if (config.kg == KgKind::kAtomic && o.pairs.empty()) throw UsageError("--kg atomic needs --pairs");
  if (config.kg == KgKind::kEdge && o.edges.empty() == o.graph_dir.empty())
    throw UsageError("--kg edge needs exactly one of --edges or --graph-dir");
  check_manifest_conflict(o.out, "extract", run_config, o.force);

  const auto tasks = load_tasks(o.tasks);
  const auto tokenizer = o.resources.tokenizer();
  const auto lexicon = o.resources.lexicon();
  Manifest manifest("extract", run_config, config.seed);
  manifest.add_input("tasks", o.tasks);

  std::vector<ExtractionResult> results;
  if (config.kg == KgKind::kAtomic) {
    AtomicStore store(load_pair_corpus(o.pairs), tokenizer, lexicon);
    manifest.add_input("pairs", o.pairs);
    results = extract_all(AtomicSource(store), tasks, config, o.jobs);
  } else {
    ConceptLinker linker(tokenizer, lexicon);
    if (!o.edges.empty()) {
      const auto format = parse_flag<EdgeFormat>(o.edge_format, "--edge-format",
                                                 [](const std::string& s) { return parse_edge_format(s); });
      const auto graph = load_edge_graph(o.edges, format, {split_list(o.relation_blocklist)});
      manifest.add_input("edges", o.edges);
      results = extract_all(EdgeSource(graph, linker), tasks, config, o.jobs);
    } else {
      manifest.add_input("graph-index", fs::path(o.graph_dir) / "index.tsv");
      results = extract_all(EdgeSource(load_graph_dir(o.graph_dir), linker), tasks, config, o.jobs);
    }
  }
  write_records(o.out, "extraction.jsonl", as_json(results), manifest);
  manifest.write(o.out);
  const auto split = split_subsets(results);
  out << fmt::format("{} instances", results.size());
  for (const auto& [m, ids] : split.ids) out << fmt::format(", CS-{}: {}", m, ids.size());
  out << '\n';
  return kExitOk;
}

// --- split -----------------------------------------------------------------

struct SplitOptions {
  std::string extraction;
  std::string out;
  bool force = false;
};

std::string coverage_text(const CoverageTable& t) {
  std::vector<std::string> header{"Variation"};
  for (const auto& c : t.columns) header.push_back(c);
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : t.rows) {
    std::vector<std::string> row{r.label};
    for (const auto& p : r.percents) row.push_back(fmt_percent(p));
    rows.push_back(std::move(row));
  }
  return format_table(header, rows);
}

Json coverage_json(const CoverageTable& t) {
  Json rows = Json::array();
  for (const auto& r : t.rows) {
    Json counts = Json::array();
    Json percents = Json::array();
    for (std::size_t c = 0; c < r.counts.size(); ++c) {
      counts.push_back(r.counts[c] ? Json(*r.counts[c]) : Json());
      percents.push_back(r.percents[c] ? Json(*r.percents[c]) : Json());
    }
    rows.push_back(Json{{"label", r.label}, {"counts", counts}, {"percents", percents}});
  }
  return Json{{"columns", t.columns}, {"dataset_sizes", t.dataset_sizes}, {"rows", rows}};
}

int run_split(const SplitOptions& o, std::ostream& out) {
  const Json config = Json::object();
  check_manifest_conflict(o.out, "split", config, o.force);
  const auto results = load_extraction(o.extraction);
  const auto split = split_subsets(results);
  Manifest manifest("split", config, split.config.seed);
  manifest.add_input("extraction", o.extraction);
  write_text(o.out, "splits.json", to_json(split).dump(2) + "\n", manifest);
  const auto table = coverage_report({{split.config.label(), split}});
  const auto text = coverage_text(table);
  write_text(o.out, "coverage.txt", text, manifest);
  write_text(o.out, "coverage.json", coverage_json(table).dump(2) + "\n", manifest);
  manifest.write(o.out);
  out << text;
  return kExitOk;
}

// --- emit-ks ---------------------------------------------------------------

struct EmitOptions {
  std::string train_tasks;
  std::string train_extraction;
  std::string dev_tasks;
  std::string dev_extraction;
  std::string subset;
  std::string eval = "KS+";
  bool baseline = false;
  std::string out;
  bool force = false;
};

int run_emit(const EmitOptions& o, std::ostream& out) {
  EmissionPlan plan;
  plan.subset = parse_flag<SubsetTag>(o.subset, "--subset", SubsetTag::parse);
  plan.eval = parse_flag<EvalVariant>(o.eval, "--eval", parse_eval_variant);
  plan.baseline = o.baseline;
  plan.validate();
  const Json config = to_json(plan);
  check_manifest_conflict(o.out, "emit-ks", config, o.force);

  const auto train_tasks = load_tasks(o.train_tasks);
  const auto dev_tasks = load_tasks(o.dev_tasks);
  const auto train_results = load_extraction(o.train_extraction);
  const auto dev_results = load_extraction(o.dev_extraction);
  const auto data = emit_dataset(train_tasks, train_results, dev_tasks, dev_results, plan);

  const std::uint64_t seed = train_results.empty() ? 0 : train_results.front().config.seed;
  Manifest manifest("emit-ks", config, seed);
  manifest.add_input("train-tasks", o.train_tasks);
  manifest.add_input("train-extraction", o.train_extraction);
  manifest.add_input("dev-tasks", o.dev_tasks);
  manifest.add_input("dev-extraction", o.dev_extraction);
  write_records(o.out, "train.jsonl", as_json(data.train), manifest);
  write_records(o.out, "dev.jsonl", as_json(data.dev), manifest);
  manifest.write(o.out);
  out << fmt::format("{} {}{}: train {}, dev {}\n", plan.subset.str(),
                     plan.baseline ? "baseline" : "KS", plan.baseline ? "" : fmt::format(" (eval {})", to_string(plan.eval)),
                     data.train.size(), data.dev.size());
  return kExitOk;
}

// --- build-wikihow ---------------------------------------------------------

struct WikiHowOptions {
  std::string tasks;
  std::string articles;
  std::string parses;
  std::size_t k = 1;
  Resources resources;
  std::string out;
  bool force = false;
};

int run_wikihow(const WikiHowOptions& o, std::ostream& out) {
  if (o.k == 0) throw UsageError("--k must be positive");
  Json config{{"k", o.k}, {"with_parses", !o.parses.empty()}};
  config.update(o.resources.json());
  check_manifest_conflict(o.out, "build-wikihow", config, o.force);
  const auto tasks = load_tasks(o.tasks);
  const auto articles = load_articles(o.articles);
  const auto tokenizer = o.resources.tokenizer();
  const auto index = build_title_index(articles, tokenizer);

  Manifest manifest("build-wikihow", config, 0);
  manifest.add_input("tasks", o.tasks);
  manifest.add_input("articles", o.articles);

  std::vector<Json> retrieval;
  std::vector<Json> requests;
  for (const auto& t : tasks) {
    const auto hits = retrieve_titles(index, t.question, o.k);
    Json found = Json::array();
    std::vector<const WikiHowArticle*> ranked;
    for (const auto& h : hits) {
      const auto& a = articles[h.doc_id];
      ranked.push_back(&a);
      found.push_back(Json{{"article_id", a.article_id}, {"title", a.title}, {"score", h.score}});
    }
    retrieval.push_back(Json{{"instance_id", t.instance_id}, {"goal", t.question}, {"articles", found}});
    for (const auto& r : parse_requests(t.instance_id, t.question, ranked)) requests.push_back(to_json(r));
  }
  write_records(o.out, "retrieval.jsonl", retrieval, manifest);
  write_records(o.out, "parse_requests.jsonl", requests, manifest);

  if (!o.parses.empty()) {
    manifest.add_input("parses", o.parses);
    const auto groups = load_parse_exchange(o.parses);
    std::map<std::string, std::vector<ParseGroup>> by_instance;
    for (const auto& g : groups) by_instance[g.instance_id].push_back(g);
    std::vector<std::pair<std::string, EdgeGraph>> graphs;
    std::size_t built = 0;
    for (const auto& t : tasks) {
      auto it = by_instance.find(t.instance_id);
      if (it == by_instance.end()) continue;
      auto graph = build_instance_graph(it->second, "wikihow:" + t.instance_id);
      if (!graph.edges().empty()) ++built;
      graphs.emplace_back(t.instance_id, std::move(graph));
    }
    const fs::path gdir = fs::path(o.out) / "graphs";
    for (const auto& f : write_graph_dir(gdir, graphs)) manifest.add_output(o.out, "graphs/" + f);
    out << fmt::format("{} instances, {} non-empty graphs\n", tasks.size(), built);
  } else {
    out << fmt::format("{} instances, {} parse requests\n", tasks.size(), requests.size());
  }
  manifest.write(o.out);
  return kExitOk;
}

// --- gen-probes ------------------------------------------------------------

struct ProbeOptions {
  std::string train;
  std::string dev;
  bool balance = false;
  std::uint64_t seed = 0;
  Resources resources;
  std::string out;
  bool force = false;
};

int run_probes(const ProbeOptions& o, std::ostream& out) {
  if (o.train.empty() && o.dev.empty()) throw UsageError("give --train and/or --dev");
  Json config{{"balance", o.balance}};
  config.update(o.resources.json());
  check_manifest_conflict(o.out, "gen-probes", config, o.force);
  const auto lexicon = o.resources.lexicon();
  Manifest manifest("gen-probes", config, o.seed);

  std::vector<std::pair<std::string, ProbeSuite>> suites;
  for (const auto& [split, path] : {std::pair{std::string("train"), o.train}, std::pair{std::string("dev"), o.dev}}) {
    if (path.empty()) continue;
    manifest.add_input(split, path);
    const auto corpus = load_pair_corpus(path);
    auto suite = gen_probe_suite(corpus, lexicon, {o.balance, o.seed});
    for (const auto& set : suite.sets) {
      for (auto format : {ProbeFormat::kQA, ProbeFormat::kMLM}) {
        const auto& probes = format == ProbeFormat::kQA ? set.qa : set.mlm;
        write_records(o.out, split + "/" + probe_file_name(set, format), as_json(probes), manifest);
      }
    }
    suites.emplace_back(split, std::move(suite));
  }

  std::vector<std::string> header{"Type"};
  for (const auto& [split, suite] : suites) header.push_back(split);
  std::vector<std::vector<std::string>> rows;
  Json sizes = Json::array();
  const auto& first = suites.front().second;
  for (std::size_t i = 0; i < first.sets.size(); ++i) {
    std::vector<std::string> row{first.sets[i].size.name};
    Json entry{{"type", first.sets[i].size.name}};
    for (const auto& [split, suite] : suites) {
      const auto& s = suite.sets[i].size;
      row.push_back(std::to_string(s.count));
      entry[split] = Json{{"count", s.count}, {"gold0", s.per_gold[0]}, {"gold1", s.per_gold[1]}};
    }
    rows.push_back(std::move(row));
    sizes.push_back(std::move(entry));
  }
  std::string text = format_table(header, rows);
  for (const auto& [split, suite] : suites) {
    text += fmt::format("{}: concept skips event {}, inference {}\n", split, suite.concept_event.skipped,
                        suite.concept_inference.skipped);
  }
  write_text(o.out, "sizes.txt", text, manifest);
  write_text(o.out, "sizes.json", Json{{"sizes", sizes}}.dump(2) + "\n", manifest);
  manifest.write(o.out);
  out << text;
  return kExitOk;
}

// --- analyze ---------------------------------------------------------------

struct AnalyzeOptions {
  std::string predictions;
  std::string gold;
  std::string base;
  std::string ks;
  std::string curve;
  std::string probes;
  std::vector<std::string> splits;  // name=path
  std::optional<double> reference;
  std::string out;
  bool force = false;
};

// Reference cells rendered next to the delta means.
constexpr double kReferenceBecameCorrect = 19.5;
constexpr double kReferenceBecameIncorrect = 12.4;

void finish_report(const AnalyzeOptions& o, const std::string& kind, const Json& config,
                   const std::vector<std::pair<std::string, std::string>>& inputs,
                   const std::string& text, const Json& json, std::ostream& out) {
  Manifest manifest("analyze " + kind, config, 0);
  for (const auto& [role, path] : inputs) manifest.add_input(role, path);
  write_text(o.out, "report.txt", text, manifest);
  write_text(o.out, "report.json", json.dump(2) + "\n", manifest);
  manifest.write(o.out);
  out << text;
}

std::string pct(double v) { return fmt::format("{:.1f}", 100.0 * v); }

int run_analyze(const std::string& kind, const AnalyzeOptions& o, std::ostream& out) {
  Json config{{"kind", kind}};
  if (o.reference) config["reference"] = *o.reference;
  check_manifest_conflict(o.out, "analyze " + kind, config, o.force);

  if (kind == "accuracy") {
    const auto log = load_predictions(o.predictions);
    const auto gold = load_gold(o.gold);
    const double acc = accuracy(log, gold);
    std::vector<std::string> header{"Log", "Records", "Accuracy"};
    std::vector<std::string> row{log.front().model_tag, std::to_string(log.size()), pct(acc)};
    if (o.reference) {
      header.push_back("Reference");
      row.push_back(fmt::format("{:.1f}", *o.reference));
    }
    Json json{{"model_tag", log.front().model_tag}, {"records", log.size()}, {"accuracy", acc}};
    if (o.reference) json["reference_percent"] = *o.reference;
    finish_report(o, kind, config, {{"predictions", o.predictions}, {"gold", o.gold}},
                  format_table(header, {row}), json, out);
  } else if (kind == "delta") {
    const auto base = load_predictions(o.base);
    const auto ks = load_predictions(o.ks);
    const auto gold = load_gold(o.gold);
    const auto report = delta_analysis(base, ks, gold);
    std::vector<std::vector<std::string>> rows;
    Json kinds = Json::object();
    for (auto k : kAllChangeKinds) {
      const auto& s = report.by_kind.at(k);
      std::string ref = "";
      if (k == ChangeKind::kBecameCorrect) ref = fmt::format("{:.1f}%", kReferenceBecameCorrect);
      if (k == ChangeKind::kBecameIncorrect) ref = fmt::format("{:.1f}%", kReferenceBecameIncorrect);
      rows.push_back({std::string(to_string(k)), std::to_string(s.count),
                      s.mean_delta ? fmt::format("{:.1f}%", 100.0 * *s.mean_delta) : "-", ref});
      kinds[std::string(to_string(k))] =
          Json{{"count", s.count}, {"mean_delta", s.mean_delta ? Json(*s.mean_delta) : Json()}};
    }
    Json records = Json::array();
    for (const auto& d : report.records) {
      records.push_back(Json{{"instance_id", d.instance_id}, {"selected", d.selected},
                             {"delta", d.delta}, {"change_kind", to_string(d.change_kind)}});
    }
    std::string text = format_table({"Change", "Records", "Mean dp", "Reference"}, rows);
    text += "became_correct / became_incorrect: the prediction switched and the KS model is right / wrong\n";
    Json json{{"by_kind", kinds},
              {"reference", {{"became_correct", kReferenceBecameCorrect},
                             {"became_incorrect", kReferenceBecameIncorrect}}},
              {"records", records}};
    finish_report(o, kind, config, {{"base", o.base}, {"ks", o.ks}, {"gold", o.gold}}, text, json, out);
  } else if (kind == "coverage") {
    if (o.splits.empty()) throw UsageError("give at least one --split NAME=PATH");
    std::vector<std::pair<std::string, SubsetSplit>> splits;
    std::vector<std::pair<std::string, std::string>> inputs;
    for (const auto& s : o.splits) {
      const auto eq = s.find('=');
      if (eq == std::string::npos || eq == 0) throw UsageError("--split expects NAME=PATH, got " + s);
      const auto path = s.substr(eq + 1);
      Json doc;
      try {
        doc = Json::parse(read_file(path));
      } catch (const Json::exception& e) {
        throw DataError(path + ": " + e.what());
      }
      splits.emplace_back(s.substr(0, eq), subset_split_from_json(doc));
      inputs.emplace_back(s.substr(0, eq), path);
    }
    const auto table = coverage_report(splits);
    finish_report(o, kind, config, inputs, coverage_text(table), coverage_json(table), out);
  } else if (kind == "curve") {
    const auto curve = load_curve(o.curve);
    const auto m = curve_metrics(curve);
    const auto text = format_table({"Points", "max", "WS"},
                                   {{std::to_string(curve.size()), pct(m.max), pct(m.ws)}});
    finish_report(o, kind, config, {{"curve", o.curve}}, text,
                  Json{{"points", curve.size()}, {"max", m.max}, {"ws", m.ws}}, out);
  } else if (kind == "probes") {
    const auto log = load_predictions(o.predictions);
    const auto gold = load_gold(o.probes);
    const auto s = score_probes(log, gold);
    const auto text = format_table({"Probes", "majority", "accuracy"},
                                   {{std::to_string(s.count), pct(s.majority), pct(s.accuracy)}});
    finish_report(o, kind, config, {{"predictions", o.predictions}, {"probes", o.probes}}, text,
                  Json{{"count", s.count}, {"majority", s.majority}, {"accuracy", s.accuracy}}, out);
  }
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv) { return run(argc, argv, std::cout, std::cerr); }

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Knowledge-graph to task match toolkit", "kgmatch"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  ConvertOptions convert;
  auto* c = app.add_subcommand("convert-atomic", "Flatten the native event-inference CSV to TSV per split");
  c->add_option("--input", convert.inputs, "Native CSV file(s)")->required();
  c->add_option("--default-split", convert.default_split, "Split name for rows without one");
  c->add_option("--out", convert.out, "Output directory")->required();
  c->add_flag("--force", convert.force, "Overwrite a conflicting manifest");

  LoadCheckOptions check;
  auto* lc = app.add_subcommand("load-check", "Load a knowledge graph and report its size");
  lc->add_option("--pairs", check.pairs, "Normalized pair TSV");
  lc->add_option("--edges", check.edges, "Edge file");
  lc->add_option("--edge-format", check.edge_format, "assertions-csv or edge-tsv");
  lc->add_option("--relation-blocklist", check.relation_blocklist, "Comma-separated relations to drop");

  ExtractOptions ex;
  auto* e = app.add_subcommand("extract", "Extract per-candidate knowledge");
  e->add_option("--kg", ex.kg, "atomic or edge")->required();
  e->add_option("--conditioning", ex.conditioning, "qc or a")->required();
  e->add_option("--shape", ex.shape, "pair, path or subgraph")->required();
  e->add_option("--filter", ex.filter, "hq or hr")->required();
  e->add_option("--pool-size", ex.pool_size, "Retrieval pool size")->capture_default_str();
  e->add_option("--atomic-subgraph-cap", ex.atomic_subgraph_cap)->capture_default_str();
  e->add_option("--edge-subgraph-cap", ex.edge_subgraph_cap)->capture_default_str();
  e->add_option("--seed", ex.seed, "Seed for random triple choice")->capture_default_str();
  e->add_flag("--no-random", ex.no_random, "Take edge triples in pool order");
  e->add_option("--path-score", ex.path_score, "sum or product of linked pool scores")->capture_default_str();
  e->add_option("--tasks", ex.tasks, "Task instances (JSONL)")->required();
  e->add_option("--pairs", ex.pairs, "Normalized pair TSV");
  e->add_option("--edges", ex.edges, "Edge file");
  e->add_option("--edge-format", ex.edge_format, "assertions-csv or edge-tsv")->capture_default_str();
  e->add_option("--graph-dir", ex.graph_dir, "Per-instance graphs from build-wikihow");
  e->add_option("--relation-blocklist", ex.relation_blocklist, "Comma-separated relations to drop");
  add_resource_options(e, ex.resources);
  e->add_option("--jobs", ex.jobs, "Worker threads (0 = all cores)")->capture_default_str();
  e->add_option("--out", ex.out, "Output directory")->required();
  e->add_flag("--force", ex.force, "Overwrite a conflicting manifest");

  SplitOptions sp;
  auto* s = app.add_subcommand("split", "Tag instances CS-0..CS-n and report coverage");
  s->add_option("--extraction", sp.extraction, "extraction.jsonl")->required();
  s->add_option("--out", sp.out, "Output directory")->required();
  s->add_flag("--force", sp.force, "Overwrite a conflicting manifest");

  EmitOptions em;
  auto* k = app.add_subcommand("emit-ks", "Write knowledge-surrounded or baseline datasets for a subset");
  k->add_option("--train-tasks", em.train_tasks)->required();
  k->add_option("--train-extraction", em.train_extraction)->required();
  k->add_option("--dev-tasks", em.dev_tasks)->required();
  k->add_option("--dev-extraction", em.dev_extraction)->required();
  k->add_option("--subset", em.subset, "CS-1, CS-2 or CS-3")->required();
  k->add_option("--eval", em.eval, "KS+ or KS-")->capture_default_str();
  k->add_flag("--baseline", em.baseline, "Write bare candidates everywhere");
  k->add_option("--out", em.out, "Output directory")->required();
  k->add_flag("--force", em.force, "Overwrite a conflicting manifest");

  WikiHowOptions wh;
  auto* w = app.add_subcommand("build-wikihow", "Retrieve articles and build per-instance graphs");
  w->add_option("--tasks", wh.tasks, "Task instances whose question is the goal")->required();
  w->add_option("--articles", wh.articles, "Articles (JSONL)")->required();
  w->add_option("--parses", wh.parses, "Parse-exchange file; omit to write parse requests only");
  w->add_option("--k", wh.k, "Titles per goal")->capture_default_str();
  add_resource_options(w, wh.resources);
  w->add_option("--out", wh.out, "Output directory")->required();
  w->add_flag("--force", wh.force, "Overwrite a conflicting manifest");

  ProbeOptions pr;
  auto* p = app.add_subcommand("gen-probes", "Generate QA and MLM probes");
  p->add_option("--train", pr.train, "Train split pair TSV");
  p->add_option("--dev", pr.dev, "Dev split pair TSV");
  p->add_flag("--balance", pr.balance, "Downsample to equal gold classes");
  p->add_option("--seed", pr.seed, "Seed for --balance")->capture_default_str();
  add_resource_options(p, pr.resources);
  p->add_option("--out", pr.out, "Output directory")->required();
  p->add_flag("--force", pr.force, "Overwrite a conflicting manifest");

  AnalyzeOptions an;
  std::string analyze_kind;
  auto* a = app.add_subcommand("analyze", "Accuracy, delta, coverage, curve and probe reports");
  a->require_subcommand(1);
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", an.out, "Output directory")->required();
    sub->add_flag("--force", an.force, "Overwrite a conflicting manifest");
    sub->callback([&analyze_kind, sub] { analyze_kind = sub->get_name(); });
  };
  auto* a1 = a->add_subcommand("accuracy", "Accuracy of a prediction log");
  a1->add_option("--predictions", an.predictions)->required();
  a1->add_option("--gold", an.gold, "Task or dataset file with gold_index")->required();
  a1->add_option("--reference", an.reference, "Reference accuracy (percent) shown alongside");
  add_common(a1);
  auto* a2 = a->add_subcommand("delta", "Distribution change between paired logs");
  a2->add_option("--base", an.base)->required();
  a2->add_option("--ks", an.ks)->required();
  a2->add_option("--gold", an.gold)->required();
  add_common(a2);
  auto* a3 = a->add_subcommand("coverage", "Coverage table over subset splits");
  a3->add_option("--split", an.splits, "NAME=splits.json, repeatable")->required();
  add_common(a3);
  auto* a4 = a->add_subcommand("curve", "max and WS of a learning curve");
  a4->add_option("--curve", an.curve)->required();
  add_common(a4);
  auto* a5 = a->add_subcommand("probes", "Probe accuracy and majority baseline");
  a5->add_option("--predictions", an.predictions)->required();
  a5->add_option("--probes", an.probes)->required();
  add_common(a5);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    return app.exit(ex, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*c) return run_convert(convert, out);
    if (*lc) return run_load_check(check, out, err);
    if (*e) return run_extract(ex, out);
    if (*s) return run_split(sp, out);
    if (*k) return run_emit(em, out);
    if (*w) return run_wikihow(wh, out);
    if (*p) return run_probes(pr, out);
    if (*a) return run_analyze(analyze_kind, an, out);
  } catch (const UsageError& ex) {
    err << "usage error: " << ex.what() << '\n';
    return kExitUsage;
  } catch (const DataError& ex) {
    err << "data error: " << ex.what() << '\n';
    return kExitData;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace kgmatch::cli
