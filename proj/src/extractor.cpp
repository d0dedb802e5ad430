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

#include "kgmatch/extractor.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <exception>
#include <mutex>
#include <random>
#include <set>
#include <thread>
#include <tuple>

#include "kgmatch/error.hpp"
#include "kgmatch/text.hpp"

namespace kgmatch {
namespace {

template <typename E, std::size_t N>
std::optional<E> parse_enum(std::string_view s, const std::pair<E, std::string_view> (&table)[N]) {
  const std::string lower = to_lower(s);
  for (const auto& [value, name] : table)
    if (lower == name) return value;
  return std::nullopt;
}

template <typename E, std::size_t N>
std::string_view enum_name(E e, const std::pair<E, std::string_view> (&table)[N]) {
  for (const auto& [value, name] : table)
    if (value == e) return name;
  return "?";
}

constexpr std::pair<KgKind, std::string_view> kKgNames[] = {{KgKind::kAtomic, "atomic"},
                                                            {KgKind::kEdge, "edge"}};
constexpr std::pair<Conditioning, std::string_view> kCondNames[] = {{Conditioning::kQC, "qc"},
                                                                    {Conditioning::kA, "a"}};
constexpr std::pair<Shape, std::string_view> kShapeNames[] = {
    {Shape::kPairOrTriple, "pair"}, {Shape::kPath, "path"}, {Shape::kSubgraph, "subgraph"}};
constexpr std::pair<FilterMode, std::string_view> kFilterNames[] = {{FilterMode::kHQ, "hq"},
                                                                    {FilterMode::kHR, "hr"}};
constexpr std::pair<PathScore, std::string_view> kPathScoreNames[] = {
    {PathScore::kSum, "sum"}, {PathScore::kProduct, "product"}};

template <typename T>
T required(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw DataError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception&) {
    throw DataError(std::string("field '") + key + "' has the wrong type");
  }
}

template <typename E, std::size_t N>
E enum_field(const Json& j, const char* key, const std::pair<E, std::string_view> (&table)[N]) {
  const auto s = required<std::string>(j, key);
  if (auto v = parse_enum(s, table)) return *v;
  throw DataError(std::string("bad value '") + s + "' for '" + key + "'");
}

bool is_none_inference(std::string_view inference) { return to_lower(trim(inference)) == "none"; }

double combine(PathScore mode, double a, double b) {
  return mode == PathScore::kSum ? a + b : a * b;
}

// Best edge between two nodes, ignoring direction: max weight, then the
// lowest edge index.
struct Hop {
  double weight = 0;
  std::uint32_t edge = 0;
};

using NeighborMap = std::map<std::uint32_t, Hop>;

NeighborMap neighbors(const EdgeGraph& graph, std::uint32_t node) {
  NeighborMap out;
  auto visit = [&](std::uint32_t e, std::uint32_t other) {
    if (other == node) return;
    const double w = graph.edges()[e].weight;
    auto [it, fresh] = out.try_emplace(other, Hop{w, e});
    if (!fresh && (w > it->second.weight || (w == it->second.weight && e < it->second.edge)))
      it->second = Hop{w, e};
  };
  for (std::uint32_t e : graph.outgoing(node)) visit(e, graph.edges()[e].tail);
  for (std::uint32_t e : graph.incoming(node)) visit(e, graph.edges()[e].head);
  return out;
}

struct NodePath {
  std::array<std::uint32_t, 3> nodes{};
  std::array<std::uint32_t, 2> edges{};
  double score = 0;
};

}  // namespace

// --- TaskInstance ----------------------------------------------------------

void TaskInstance::validate() const {
  if (instance_id.empty()) throw DataError("task instance without an id");
  if (candidates.size() < 2 || candidates.size() > 3)
    throw DataError("instance " + instance_id + " has " + std::to_string(candidates.size()) +
                    " candidates; expected 2 or 3");
  if (gold_index < 0 || gold_index >= static_cast<int>(candidates.size()))
    throw DataError("instance " + instance_id + " has gold_index out of range");
}

TaskInstance task_from_json(const Json& j) {
  TaskInstance t;
  const Json& id = j.contains("instance_id") ? j.at("instance_id") : Json();
  if (id.is_number_integer()) t.instance_id = std::to_string(id.get<long long>());
  else t.instance_id = required<std::string>(j, "instance_id");
  t.question = normalize_whitespace(required<std::string>(j, "question"));
  for (const auto& c : required<std::vector<std::string>>(j, "candidates"))
    t.candidates.push_back(normalize_whitespace(c));
  t.gold_index = required<int>(j, "gold_index");
  t.validate();
  return t;
}

Json to_json(const TaskInstance& t) {
  return Json{{"instance_id", t.instance_id},
              {"question", t.question},
              {"candidates", t.candidates},
              {"gold_index", t.gold_index}};
}

std::vector<TaskInstance> load_tasks(const std::filesystem::path& path) {
  std::vector<TaskInstance> out;
  std::set<std::string> seen;
  for_each_jsonl(path, [&](const Json& j, std::size_t line) {
    try {
      out.push_back(task_from_json(j));
    } catch (const DataError& e) {
      throw DataError(path.string() + ":" + std::to_string(line) + ": " + e.what());
    }
    if (!seen.insert(out.back().instance_id).second)
      throw DataError(path.string() + ":" + std::to_string(line) + ": duplicate instance_id " +
                      out.back().instance_id);
  });
  return out;
}

// --- Config ----------------------------------------------------------------

std::optional<KgKind> parse_kg_kind(std::string_view s) { return parse_enum(s, kKgNames); }
std::optional<Conditioning> parse_conditioning(std::string_view s) { return parse_enum(s, kCondNames); }
std::optional<Shape> parse_shape(std::string_view s) { return parse_enum(s, kShapeNames); }
std::optional<FilterMode> parse_filter(std::string_view s) { return parse_enum(s, kFilterNames); }
std::optional<PathScore> parse_path_score(std::string_view s) { return parse_enum(s, kPathScoreNames); }
std::string_view to_string(KgKind k) { return enum_name(k, kKgNames); }
std::string_view to_string(Conditioning c) { return enum_name(c, kCondNames); }
std::string_view to_string(Shape s) { return enum_name(s, kShapeNames); }
std::string_view to_string(FilterMode f) { return enum_name(f, kFilterNames); }
std::string_view to_string(PathScore p) { return enum_name(p, kPathScoreNames); }

void ExtractionConfig::validate() const {
  if (pool_size == 0) throw UsageError("pool size must be positive");
  if (atomic_subgraph_cap == 0 || edge_subgraph_cap == 0)
    throw UsageError("subgraph caps must be positive");
}

std::string ExtractionConfig::label() const {
  return (conditioning == Conditioning::kQC ? "QC-" : "A-") +
         std::string(filter == FilterMode::kHQ ? "HQ" : "HR");
}

Json to_json(const ExtractionConfig& c) {
  return Json{{"kg", to_string(c.kg)},
              {"conditioning", to_string(c.conditioning)},
              {"shape", to_string(c.shape)},
              {"filter", to_string(c.filter)},
              {"pool_size", c.pool_size},
              {"atomic_subgraph_cap", c.atomic_subgraph_cap},
              {"edge_subgraph_cap", c.edge_subgraph_cap},
              {"seed", c.seed},
              {"random_triples", c.random_triples},
              {"path_score", to_string(c.path_score)}};
}

ExtractionConfig extraction_config_from_json(const Json& j) {
  ExtractionConfig c;
  c.kg = enum_field(j, "kg", kKgNames);
  c.conditioning = enum_field(j, "conditioning", kCondNames);
  c.shape = enum_field(j, "shape", kShapeNames);
  c.filter = enum_field(j, "filter", kFilterNames);
  c.pool_size = required<std::size_t>(j, "pool_size");
  c.atomic_subgraph_cap = required<std::size_t>(j, "atomic_subgraph_cap");
  c.edge_subgraph_cap = required<std::size_t>(j, "edge_subgraph_cap");
  c.seed = required<std::uint64_t>(j, "seed");
  c.random_triples = required<bool>(j, "random_triples");
  c.path_score = enum_field(j, "path_score", kPathScoreNames);
  try {
    c.validate();
  } catch (const UsageError& e) {
    throw DataError(e.what());
  }
  return c;
}

// --- Results ---------------------------------------------------------------

std::optional<SubsetTag> SubsetTag::parse(std::string_view s) {
  if (s.size() < 4 || s.substr(0, 3) != "CS-") return std::nullopt;
  int m = 0;
  for (char c : s.substr(3)) {
    if (c < '0' || c > '9') return std::nullopt;
    m = m * 10 + (c - '0');
    if (m > 1000) return std::nullopt;
  }
  return SubsetTag{m};
}

SubsetTag ExtractionResult::subset_tag() const {
  return SubsetTag{static_cast<int>(
      std::count_if(per_candidate.begin(), per_candidate.end(), [](const auto& k) { return k.has_value(); }))};
}

Json to_json(const ExtractionResult& r) {
  Json slots = Json::array();
  for (const auto& k : r.per_candidate) slots.push_back(k ? to_json(*k) : Json());
  return Json{{"instance_id", r.instance_id},
              {"config", to_json(r.config)},
              {"per_candidate", std::move(slots)},
              {"subset_tag", r.subset_tag().str()}};
}

ExtractionResult extraction_result_from_json(const Json& j) {
  ExtractionResult r;
  r.instance_id = required<std::string>(j, "instance_id");
  r.config = extraction_config_from_json(required<Json>(j, "config"));
  for (const auto& slot : required<Json>(j, "per_candidate")) {
    if (slot.is_null()) {
      r.per_candidate.emplace_back();
    } else {
      try {
        r.per_candidate.emplace_back(knowledge_item_from_json(slot));
      } catch (const Json::exception& e) {
        throw DataError(std::string("bad knowledge item: ") + e.what());
      } catch (const DataError&) {
        throw;
      } catch (const Error& e) {
        throw DataError(e.what());
      }
    }
  }
  const auto tag = SubsetTag::parse(required<std::string>(j, "subset_tag"));
  if (!tag || *tag != r.subset_tag())
    throw DataError("instance " + r.instance_id + ": subset_tag does not match its knowledge slots");
  return r;
}

std::vector<ExtractionResult> load_extraction(const std::filesystem::path& path) {
  std::vector<ExtractionResult> out;
  for_each_jsonl(path, [&](const Json& j, std::size_t line) {
    try {
      out.push_back(extraction_result_from_json(j));
    } catch (const DataError& e) {
      throw DataError(path.string() + ":" + std::to_string(line) + ": " + e.what());
    }
  });
  return out;
}

// --- Linking ---------------------------------------------------------------

std::vector<std::string> ConceptLinker::content_lemmas(std::string_view text) const {
  std::vector<std::string> out;
  for (const auto& tok : tokenizer_->tokenize(text)) out.push_back(lexicon_->lemma(tok));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::string> ConceptLinker::graph_concepts(std::string_view text,
                                                       const EdgeGraph& graph) const {
  const auto words = tokenizer_->words(text);
  std::vector<std::string> lemmas;
  std::vector<bool> content;
  for (const auto& w : words) {
    lemmas.push_back(lexicon_->lemma(w));
    content.push_back(!tokenizer_->is_stopword(w));
  }
  std::vector<std::string> out;
  const std::size_t longest = graph.max_phrase_words();
  for (std::size_t i = 0; i < lemmas.size(); ++i) {
    if (content[i] && graph.find(lemmas[i])) out.push_back(lemmas[i]);
    std::string phrase = lemmas[i];
    bool any_content = content[i];
    for (std::size_t n = 2; n <= longest && i + n <= lemmas.size(); ++n) {
      phrase += '_';
      phrase += lemmas[i + n - 1];
      any_content = any_content || content[i + n - 1];
      if (any_content && graph.find(phrase)) out.push_back(phrase);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool shares_lemma(std::span<const std::string> a, std::span<const std::string> b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j) ++i;
    else ++j;
  }
  return false;
}

AtomicStore::AtomicStore(PairCorpus corpus, const Tokenizer& tokenizer, const LexicalResource& lexicon)
    : corpus_(std::move(corpus)), linker_(tokenizer, lexicon) {
  std::vector<std::pair<DocId, std::string>> docs;
  docs.reserve(corpus_.pairs.size());
  for (const auto& p : corpus_.pairs) {
    if (is_none_inference(p.inference)) continue;
    docs.emplace_back(p.pair_id, p.text());
    lemmas_.emplace(p.pair_id, linker_.content_lemmas(docs.back().second));
  }
  index_ = std::make_unique<TfIdfIndex>(std::move(docs), tokenizer);
}

const std::vector<std::string>& AtomicStore::pair_lemmas(std::uint32_t pair_id) const {
  auto it = lemmas_.find(pair_id);
  if (it == lemmas_.end()) throw Error("pair " + std::to_string(pair_id) + " is not indexed");
  return it->second;
}

// --- Conditioning ----------------------------------------------------------

std::vector<ScoredDoc> extract_atomic_pool(const AtomicStore& store, Conditioning conditioning,
                                           std::string_view question, std::string_view answer,
                                           std::size_t pool_size) {
  if (conditioning == Conditioning::kA) return store.index().score_top_k(answer, pool_size);
  std::string joint(question);
  joint += ' ';
  joint += answer;
  const auto first = store.index().score_top_k(joint, pool_size);
  std::vector<DocId> ids;
  for (const auto& d : first) ids.push_back(d.doc_id);
  auto reranked = store.index().score_subset(answer, ids);
  std::erase_if(reranked, [](const ScoredDoc& d) { return d.score <= 0; });
  return reranked;
}

std::vector<LinkedEdge> extract_edge_triples(const EdgeGraph& graph, const ConceptLinker& linker,
                                             Conditioning conditioning, std::string_view question,
                                             std::string_view answer) {
  const auto answer_concepts = linker.graph_concepts(answer, graph);
  std::set<std::uint32_t> answer_nodes;
  for (auto id : lookup_concepts(graph, answer_concepts)) answer_nodes.insert(id);
  std::set<std::uint32_t> question_nodes;
  if (conditioning == Conditioning::kQC) {
    for (auto id : lookup_concepts(graph, linker.graph_concepts(question, graph)))
      question_nodes.insert(id);
  }

  std::set<std::uint32_t> edge_ids;
  for (auto n : answer_nodes) {
    for (auto e : graph.outgoing(n)) edge_ids.insert(e);
    for (auto e : graph.incoming(n)) edge_ids.insert(e);
  }

  std::vector<LinkedEdge> out;
  for (auto e : edge_ids) {
    const auto& edge = graph.edges()[e];
    const bool head_a = answer_nodes.count(edge.head) > 0;
    const bool tail_a = answer_nodes.count(edge.tail) > 0;
    if (conditioning == Conditioning::kA) {
      out.push_back({e, graph.lemma(head_a ? edge.head : edge.tail)});
      continue;
    }
    const bool head_q = question_nodes.count(edge.head) > 0;
    const bool tail_q = question_nodes.count(edge.tail) > 0;
    if (head_q && tail_a) out.push_back({e, graph.lemma(edge.tail)});
    else if (tail_q && head_a) out.push_back({e, graph.lemma(edge.head)});
  }
  std::sort(out.begin(), out.end(), [&](const LinkedEdge& x, const LinkedEdge& y) {
    const auto& a = graph.edges()[x.edge];
    const auto& b = graph.edges()[y.edge];
    if (a.weight != b.weight) return a.weight > b.weight;
    return std::tie(graph.lemma(a.head), a.relation, graph.lemma(a.tail), x.edge) <
           std::tie(graph.lemma(b.head), b.relation, graph.lemma(b.tail), y.edge);
  });
  return out;
}

// --- Shapes ----------------------------------------------------------------

std::vector<KnowledgeItem> pair_items(const AtomicStore& store, std::span<const ScoredDoc> pool) {
  std::vector<KnowledgeItem> out;
  out.reserve(pool.size());
  for (const auto& d : pool) {
    const auto& p = store.pair(static_cast<std::uint32_t>(d.doc_id));
    out.push_back(make_item(p, d.score, {store.corpus().source_name, {d.doc_id}}));
  }
  return out;
}

namespace {

Triple triple_of(const EdgeGraph& graph, std::uint32_t e) {
  const auto& edge = graph.edges()[e];
  return Triple{graph.lemma(edge.head), edge.relation, graph.lemma(edge.tail), edge.weight};
}

}  // namespace

std::vector<KnowledgeItem> triple_items(const EdgeGraph& graph, std::span<const LinkedEdge> pool,
                                        std::uint64_t seed, bool random) {
  std::vector<std::uint32_t> order;
  for (const auto& l : pool) order.push_back(l.edge);
  if (random && order.size() > 1) {
    std::mt19937_64 rng(seed);
    for (std::size_t i = order.size() - 1; i > 0; --i)
      std::swap(order[i], order[uniform_index(rng, i + 1)]);
  }
  std::vector<KnowledgeItem> out;
  out.reserve(order.size());
  for (auto e : order) {
    const auto t = triple_of(graph, e);
    const double w = t.weight;
    out.push_back(make_item(t, w, {graph.source_name(), {e}}));
  }
  return out;
}

std::optional<KnowledgeItem> shape_pair_or_triple(const AtomicStore& store,
                                                  std::span<const ScoredDoc> pool) {
  if (pool.empty()) return std::nullopt;
  return pair_items(store, pool.first(1)).front();
}

std::optional<KnowledgeItem> shape_pair_or_triple(const EdgeGraph& graph,
                                                  std::span<const LinkedEdge> pool,
                                                  std::uint64_t seed, bool random) {
  if (pool.empty()) return std::nullopt;
  return triple_items(graph, pool, seed, random).front();
}

std::vector<KnowledgeItem> atomic_path_items(const AtomicStore& store, const ExtractionConfig& config,
                                             std::string_view question, std::string_view answer) {
  struct Combo {
    double score;
    DocId linked;
    DocId answer;
  };
  std::vector<Combo> combos;
  const auto apool =
      extract_atomic_pool(store, config.conditioning, question, answer, config.pool_size);
  if (config.conditioning == Conditioning::kQC) {
    const auto qpool = store.index().score_top_k(question, config.pool_size);
    for (const auto& q : qpool) {
      const auto& ql = store.pair_lemmas(static_cast<std::uint32_t>(q.doc_id));
      for (const auto& a : apool) {
        if (q.doc_id == a.doc_id) continue;
        if (!shares_lemma(ql, store.pair_lemmas(static_cast<std::uint32_t>(a.doc_id)))) continue;
        combos.push_back({combine(config.path_score, q.score, a.score), q.doc_id, a.doc_id});
      }
    }
  } else {
    for (const auto& a : apool) {
      const auto& ap = store.pair(static_cast<std::uint32_t>(a.doc_id));
      const auto& al = store.pair_lemmas(ap.pair_id);
      for (const auto& l : store.index().score_top_k(ap.text(), config.pool_size + 1)) {
        if (l.doc_id == a.doc_id) continue;
        if (!shares_lemma(al, store.pair_lemmas(static_cast<std::uint32_t>(l.doc_id)))) continue;
        combos.push_back({combine(config.path_score, a.score, l.score), l.doc_id, a.doc_id});
      }
    }
  }
  std::sort(combos.begin(), combos.end(), [](const Combo& x, const Combo& y) {
    const auto kx = score_key(x.score), ky = score_key(y.score);
    if (kx != ky) return kx > ky;
    return std::tie(x.linked, x.answer) < std::tie(y.linked, y.answer);
  });
  // A: the same combination can be reached from both ends.
  combos.erase(std::unique(combos.begin(), combos.end(),
                           [](const Combo& x, const Combo& y) {
                             return x.linked == y.linked && x.answer == y.answer;
                           }),
               combos.end());
  if (combos.size() > config.pool_size) combos.resize(config.pool_size);

  std::vector<KnowledgeItem> out;
  for (const auto& c : combos) {
    const auto& l = store.pair(static_cast<std::uint32_t>(c.linked));
    const auto& a = store.pair(static_cast<std::uint32_t>(c.answer));
    PathShape path{{l.event, l.inference, a.event, a.inference}, false};
    out.push_back(make_item(std::move(path), c.score,
                            {store.corpus().source_name, {c.linked, c.answer}}));
  }
  return out;
}

std::vector<KnowledgeItem> edge_path_items(const EdgeGraph& graph, const ConceptLinker& linker,
                                           Conditioning conditioning, std::string_view question,
                                           std::string_view answer, std::size_t limit) {
  std::set<std::uint32_t> answer_nodes;
  for (auto id : lookup_concepts(graph, linker.graph_concepts(answer, graph))) answer_nodes.insert(id);
  std::set<std::uint32_t> question_nodes;
  if (conditioning == Conditioning::kQC) {
    for (auto id : lookup_concepts(graph, linker.graph_concepts(question, graph)))
      question_nodes.insert(id);
  }

  std::map<std::uint32_t, NeighborMap> cache;
  auto hood = [&](std::uint32_t n) -> const NeighborMap& {
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, neighbors(graph, n)).first;
    return it->second;
  };
  auto better = [&](const NodePath& x, const NodePath& y) {
    const auto kx = score_key(x.score), ky = score_key(y.score);
    if (kx != ky) return kx > ky;
    return std::tie(graph.lemma(x.nodes[0]), graph.lemma(x.nodes[1]), graph.lemma(x.nodes[2])) <
           std::tie(graph.lemma(y.nodes[0]), graph.lemma(y.nodes[1]), graph.lemma(y.nodes[2]));
  };

  std::vector<NodePath> paths;
  const auto& starts = conditioning == Conditioning::kQC ? question_nodes : answer_nodes;
  for (auto w1 : starts) {
    for (const auto& [w2, h1] : hood(w1)) {
      if (conditioning == Conditioning::kQC && !question_nodes.count(w2)) continue;
      // Only the best `limit` continuations of (w1, w2) can reach the output.
      std::vector<NodePath> local;
      for (const auto& [w3, h2] : hood(w2)) {
        if (w3 == w1) continue;
        if (conditioning == Conditioning::kQC && !answer_nodes.count(w3)) continue;
        local.push_back({{w1, w2, w3}, {h1.edge, h2.edge}, h1.weight + h2.weight});
      }
      if (local.size() > limit) {
        std::partial_sort(local.begin(), local.begin() + static_cast<std::ptrdiff_t>(limit),
                          local.end(), better);
        local.resize(limit);
      }
      paths.insert(paths.end(), local.begin(), local.end());
    }
  }
  std::sort(paths.begin(), paths.end(), better);
  if (paths.size() > limit) paths.resize(limit);

  std::vector<KnowledgeItem> out;
  for (const auto& p : paths) {
    PathShape shape{{graph.lemma(p.nodes[0]), graph.lemma(p.nodes[1]), graph.lemma(p.nodes[2])}, true};
    out.push_back(make_item(std::move(shape), p.score, {graph.source_name(), {p.edges[0], p.edges[1]}}));
  }
  return out;
}

std::optional<KnowledgeItem> shape_path(const AtomicStore& store, const ExtractionConfig& config,
                                        std::string_view question, std::string_view answer) {
  auto items = atomic_path_items(store, config, question, answer);
  if (items.empty()) return std::nullopt;
  return std::move(items.front());
}

std::optional<KnowledgeItem> shape_path(const EdgeGraph& graph, const ConceptLinker& linker,
                                        Conditioning conditioning, std::string_view question,
                                        std::string_view answer) {
  auto items = edge_path_items(graph, linker, conditioning, question, answer, 1);
  if (items.empty()) return std::nullopt;
  return std::move(items.front());
}

std::vector<KnowledgeItem> atomic_subgraph_items(const AtomicStore& store,
                                                 std::span<const ScoredDoc> pool, std::size_t cap) {
  if (cap == 0) throw UsageError("subgraph cap must be positive");
  std::vector<KnowledgeItem> out;
  for (std::size_t start = 0; start < pool.size(); start += cap) {
    SubgraphShape g;
    g.pair_edges = true;
    Provenance prov{store.corpus().source_name, {}};
    for (std::size_t i = start; i < std::min(pool.size(), start + cap); ++i) {
      const auto& p = store.pair(static_cast<std::uint32_t>(pool[i].doc_id));
      g.edges.push_back({p.event, std::string(to_string(p.dimension)), p.inference, pool[i].score});
      g.nodes.push_back(p.event);
      g.nodes.push_back(p.inference);
      prov.ids.push_back(p.pair_id);
    }
    std::sort(g.nodes.begin(), g.nodes.end());
    g.nodes.erase(std::unique(g.nodes.begin(), g.nodes.end()), g.nodes.end());
    out.push_back(make_item(std::move(g), pool[start].score, std::move(prov)));
  }
  return out;
}

std::vector<KnowledgeItem> edge_subgraph_items(const EdgeGraph& graph,
                                               std::span<const LinkedEdge> pool, std::size_t cap) {
  if (cap == 0) throw UsageError("subgraph cap must be positive");
  // Pool order is already weight-descending with lexicographic ties.
  std::map<std::string, std::vector<std::uint32_t>> groups;
  for (const auto& l : pool) groups[l.anchor].push_back(l.edge);
  std::vector<std::pair<std::string, std::vector<std::uint32_t>>> ranked(groups.begin(), groups.end());
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& x, const auto& y) {
    return x.second.size() > y.second.size();
  });

  std::vector<KnowledgeItem> out;
  for (auto& [anchor, edges] : ranked) {
    const double score = static_cast<double>(edges.size());
    if (edges.size() > cap) edges.resize(cap);
    SubgraphShape g;
    Provenance prov{graph.source_name(), {}};
    for (auto e : edges) {
      g.edges.push_back(triple_of(graph, e));
      g.nodes.push_back(g.edges.back().head);
      g.nodes.push_back(g.edges.back().tail);
      prov.ids.push_back(e);
    }
    std::sort(g.nodes.begin(), g.nodes.end());
    g.nodes.erase(std::unique(g.nodes.begin(), g.nodes.end()), g.nodes.end());
    out.push_back(make_item(std::move(g), score, std::move(prov)));
  }
  return out;
}

std::optional<KnowledgeItem> shape_subgraph(const AtomicStore& store, std::span<const ScoredDoc> pool,
                                            std::size_t cap) {
  if (pool.empty()) return std::nullopt;
  return atomic_subgraph_items(store, pool.first(std::min(cap, pool.size())), cap).front();
}

std::optional<KnowledgeItem> shape_subgraph(const EdgeGraph& graph, std::span<const LinkedEdge> pool,
                                            std::size_t cap) {
  if (pool.empty()) return std::nullopt;
  return edge_subgraph_items(graph, pool, cap).front();
}

// --- Filtering -------------------------------------------------------------

std::vector<std::optional<KnowledgeItem>> apply_filter(
    const std::vector<std::vector<KnowledgeItem>>& ranked, FilterMode filter) {
  const std::size_t n = ranked.size();
  std::vector<std::optional<KnowledgeItem>> out(n);
  if (filter == FilterMode::kHR) {
    for (std::size_t c = 0; c < n; ++c)
      if (!ranked[c].empty()) out[c] = ranked[c].front();
    return out;
  }
  std::set<std::string_view> claimed;
  std::vector<std::size_t> cursor(n, 0);
  std::vector<bool> done(n, false);
  while (true) {
    // Each open candidate offers its best-ranked item not yet taken; the
    // highest-scoring offer is accepted.
    std::optional<std::size_t> pick;
    for (std::size_t c = 0; c < n; ++c) {
      if (done[c]) continue;
      while (cursor[c] < ranked[c].size() && claimed.count(ranked[c][cursor[c]].rendered)) ++cursor[c];
      if (cursor[c] == ranked[c].size()) {
        done[c] = true;
        continue;
      }
      if (!pick) {
        pick = c;
        continue;
      }
      const auto& best = ranked[*pick][cursor[*pick]];
      const auto& mine = ranked[c][cursor[c]];
      if (mine.score > best.score) pick = c;
    }
    if (!pick) break;
    const auto& item = ranked[*pick][cursor[*pick]];
    claimed.insert(item.rendered);
    out[*pick] = item;
    done[*pick] = true;
  }
  return out;
}

// --- Subsets ---------------------------------------------------------------

std::size_t SubsetSplit::count(int m) const {
  auto it = ids.find(m);
  return it == ids.end() ? 0 : it->second.size();
}

SubsetSplit split_subsets(std::span<const ExtractionResult> results) {
  SubsetSplit s;
  s.dataset_size = results.size();
  if (!results.empty()) s.config = results.front().config;
  for (const auto& r : results) {
    if (!(r.config == s.config))
      throw DataError("extraction results mix configurations (instance " + r.instance_id + ")");
    s.max_candidates = std::max(s.max_candidates, static_cast<int>(r.per_candidate.size()));
  }
  for (int m = 0; m <= s.max_candidates; ++m) s.ids[m];
  for (const auto& r : results) s.ids[r.subset_tag().knowledge_count].push_back(r.instance_id);
  return s;
}

Json to_json(const SubsetSplit& s) {
  Json subsets = Json::object();
  for (const auto& [m, ids] : s.ids) subsets[SubsetTag{m}.str()] = ids;
  return Json{{"config", to_json(s.config)},
              {"dataset_size", s.dataset_size},
              {"max_candidates", s.max_candidates},
              {"subsets", std::move(subsets)}};
}

SubsetSplit subset_split_from_json(const Json& j) {
  SubsetSplit s;
  s.config = extraction_config_from_json(required<Json>(j, "config"));
  s.dataset_size = required<std::size_t>(j, "dataset_size");
  s.max_candidates = required<int>(j, "max_candidates");
  std::size_t total = 0;
  const auto subsets = required<Json>(j, "subsets");
  for (const auto& [key, ids] : subsets.items()) {
    const auto tag = SubsetTag::parse(key);
    if (!tag) throw DataError("bad subset key '" + key + "'");
    s.ids[tag->knowledge_count] = ids.get<std::vector<std::string>>();
    total += s.ids[tag->knowledge_count].size();
  }
  if (total != s.dataset_size) throw DataError("subset sizes do not add up to dataset_size");
  return s;
}

// --- Sources ---------------------------------------------------------------

std::vector<KnowledgeItem> AtomicSource::ranked_items(const TaskInstance& instance,
                                                      std::size_t candidate,
                                                      const ExtractionConfig& config) const {
  const auto& answer = instance.candidates.at(candidate);
  switch (config.shape) {
    case Shape::kPairOrTriple:
      return pair_items(*store_, extract_atomic_pool(*store_, config.conditioning, instance.question,
                                                     answer, config.pool_size));
    case Shape::kPath:
      return atomic_path_items(*store_, config, instance.question, answer);
    case Shape::kSubgraph:
      return atomic_subgraph_items(*store_,
                                   extract_atomic_pool(*store_, config.conditioning,
                                                       instance.question, answer, config.pool_size),
                                   config.atomic_subgraph_cap);
  }
  return {};
}

EdgeSource::EdgeSource(const EdgeGraph& graph, const ConceptLinker& linker)
    : shared_(&graph), linker_(&linker) {}

EdgeSource::EdgeSource(std::unordered_map<std::string, EdgeGraph> per_instance,
                       const ConceptLinker& linker)
    : per_instance_(std::move(per_instance)), linker_(&linker) {}

const EdgeGraph* EdgeSource::graph_for(const std::string& instance_id) const {
  if (shared_) return shared_;
  auto it = per_instance_.find(instance_id);
  return it == per_instance_.end() ? nullptr : &it->second;
}

std::vector<KnowledgeItem> EdgeSource::ranked_items(const TaskInstance& instance,
                                                    std::size_t candidate,
                                                    const ExtractionConfig& config) const {
  const EdgeGraph* graph = graph_for(instance.instance_id);
  if (!graph) return {};
  const auto& answer = instance.candidates.at(candidate);
  if (config.shape == Shape::kPath)
    return edge_path_items(*graph, *linker_, config.conditioning, instance.question, answer,
                           config.pool_size);
  const auto pool =
      extract_edge_triples(*graph, *linker_, config.conditioning, instance.question, answer);
  if (config.shape == Shape::kSubgraph)
    return edge_subgraph_items(*graph, pool, config.edge_subgraph_cap);
  auto items = triple_items(*graph, pool, candidate_seed(config.seed, instance.instance_id, candidate),
                            config.random_triples);
  if (items.size() > config.pool_size) items.resize(config.pool_size);
  return items;
}

// --- Driving ---------------------------------------------------------------

std::uint64_t candidate_seed(std::uint64_t seed, std::string_view instance_id, std::size_t candidate) {
  return splitmix64(seed ^ fnv1a64(instance_id) ^ splitmix64(candidate + 1));
}

ExtractionResult extract_instance(const KnowledgeSource& source, const TaskInstance& instance,
                                  const ExtractionConfig& config) {
  std::vector<std::vector<KnowledgeItem>> ranked;
  for (std::size_t j = 0; j < instance.candidates.size(); ++j)
    ranked.push_back(source.ranked_items(instance, j, config));
  return ExtractionResult{instance.instance_id, apply_filter(ranked, config.filter), config};
}

std::vector<ExtractionResult> extract_all(const KnowledgeSource& source,
                                          std::span<const TaskInstance> tasks,
                                          const ExtractionConfig& config, unsigned jobs) {
  config.validate();
  std::vector<ExtractionResult> out(tasks.size());
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(1, tasks.size())));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto work = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        out[i] = extract_instance(source, tasks[i], config);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = tasks.size();
      }
    }
  };
  if (jobs == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace kgmatch
