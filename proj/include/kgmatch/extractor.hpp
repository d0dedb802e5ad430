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

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kgmatch/io.hpp"
#include "kgmatch/kg_store.hpp"
#include "kgmatch/knowledge.hpp"
#include "kgmatch/lexicon.hpp"
#include "kgmatch/text_index.hpp"

namespace kgmatch {

// A multiple-choice item. `question` already holds context + question.
struct TaskInstance {
  std::string instance_id;
  std::string question;
  std::vector<std::string> candidates;  // 2 or 3
  int gold_index = 0;

  void validate() const;
  friend bool operator==(const TaskInstance&, const TaskInstance&) = default;
};

TaskInstance task_from_json(const Json& j);
Json to_json(const TaskInstance& t);
std::vector<TaskInstance> load_tasks(const std::filesystem::path& path);

enum class KgKind { kAtomic, kEdge };
enum class Conditioning { kQC, kA };
enum class Shape { kPairOrTriple, kPath, kSubgraph };
enum class FilterMode { kHQ, kHR };
// How an ATOMIC path's two pool scores combine.
enum class PathScore { kSum, kProduct };

struct ExtractionConfig {
  KgKind kg = KgKind::kAtomic;
  Conditioning conditioning = Conditioning::kQC;
  Shape shape = Shape::kPairOrTriple;
  FilterMode filter = FilterMode::kHQ;
  std::size_t pool_size = 50;
  std::size_t atomic_subgraph_cap = 3;
  std::size_t edge_subgraph_cap = 5;
  std::uint64_t seed = 0;
  bool random_triples = true;
  PathScore path_score = PathScore::kSum;

  void validate() const;
  // "QC-HQ" style label.
  std::string label() const;
  friend bool operator==(const ExtractionConfig&, const ExtractionConfig&) = default;
};

Json to_json(const ExtractionConfig& c);
ExtractionConfig extraction_config_from_json(const Json& j);

std::optional<KgKind> parse_kg_kind(std::string_view s);
std::optional<Conditioning> parse_conditioning(std::string_view s);
std::optional<Shape> parse_shape(std::string_view s);
std::optional<FilterMode> parse_filter(std::string_view s);
std::optional<PathScore> parse_path_score(std::string_view s);
std::string_view to_string(KgKind k);
std::string_view to_string(Conditioning c);
std::string_view to_string(Shape s);
std::string_view to_string(FilterMode f);
std::string_view to_string(PathScore p);

// CS-m: m candidates of the instance carry knowledge.
struct SubsetTag {
  int knowledge_count = 0;

  std::string str() const { return "CS-" + std::to_string(knowledge_count); }
  static std::optional<SubsetTag> parse(std::string_view s);
  friend auto operator<=>(const SubsetTag&, const SubsetTag&) = default;
};

struct ExtractionResult {
  std::string instance_id;
  std::vector<std::optional<KnowledgeItem>> per_candidate;
  ExtractionConfig config;

  SubsetTag subset_tag() const;
  friend bool operator==(const ExtractionResult&, const ExtractionResult&) = default;
};

Json to_json(const ExtractionResult& r);
ExtractionResult extraction_result_from_json(const Json& j);
std::vector<ExtractionResult> load_extraction(const std::filesystem::path& path);

// Maps text to lemmatized concepts.
class ConceptLinker {
 public:
  ConceptLinker(const Tokenizer& tokenizer, const LexicalResource& lexicon)
      : tokenizer_(&tokenizer), lexicon_(&lexicon) {}

  // Sorted, unique lemmas of the stopword-filtered tokens.
  std::vector<std::string> content_lemmas(std::string_view text) const;

  // Sorted, unique node lemmas of `graph` mentioned in `text`: content
  // lemmas plus multi-word node phrases matched over consecutive lemmas.
  std::vector<std::string> graph_concepts(std::string_view text, const EdgeGraph& graph) const;

  const Tokenizer& tokenizer() const { return *tokenizer_; }
  const LexicalResource& lexicon() const { return *lexicon_; }

 private:
  const Tokenizer* tokenizer_;
  const LexicalResource* lexicon_;
};

// Event-inference pairs indexed for retrieval. Pairs whose inference is
// "none" are not indexed.
class AtomicStore {
 public:
  AtomicStore(PairCorpus corpus, const Tokenizer& tokenizer, const LexicalResource& lexicon);

  const PairCorpus& corpus() const { return corpus_; }
  const TfIdfIndex& index() const { return *index_; }
  const ConceptLinker& linker() const { return linker_; }
  const EventInferencePair& pair(std::uint32_t pair_id) const { return corpus_.by_id(pair_id); }
  // Content lemmas of the pair's "event inference" text.
  const std::vector<std::string>& pair_lemmas(std::uint32_t pair_id) const;

 private:
  PairCorpus corpus_;
  std::unique_ptr<TfIdfIndex> index_;
  ConceptLinker linker_;
  std::unordered_map<std::uint32_t, std::vector<std::string>> lemmas_;
};

// True when two sorted lemma lists intersect.
bool shares_lemma(std::span<const std::string> a, std::span<const std::string> b);

// --- Conditioning ---------------------------------------------------------

// A: top pool_size pairs by tf-idf(answer). QC: top pool_size pairs by
// tf-idf(question + " " + answer), re-ranked by tf-idf(answer); pairs the
// answer does not match are dropped.
std::vector<ScoredDoc> extract_atomic_pool(const AtomicStore& store, Conditioning conditioning,
                                           std::string_view question, std::string_view answer,
                                           std::size_t pool_size);

struct LinkedEdge {
  std::uint32_t edge = 0;
  std::string anchor;  // the answer lemma the edge was linked through
  friend bool operator==(const LinkedEdge&, const LinkedEdge&) = default;
};

// A: edges touching an answer concept. QC: edges joining a question concept
// and an answer concept, either direction. Ordered by weight descending,
// then head, relation and tail lemma.
std::vector<LinkedEdge> extract_edge_triples(const EdgeGraph& graph, const ConceptLinker& linker,
                                             Conditioning conditioning, std::string_view question,
                                             std::string_view answer);

// --- Shapes ---------------------------------------------------------------
// The *_items functions return the full ranked list for one candidate; the
// shape_* functions return its first element.

std::vector<KnowledgeItem> pair_items(const AtomicStore& store, std::span<const ScoredDoc> pool);

// Random order drawn from `seed` when `random` is set, pool order otherwise.
std::vector<KnowledgeItem> triple_items(const EdgeGraph& graph, std::span<const LinkedEdge> pool,
                                        std::uint64_t seed, bool random);

std::optional<KnowledgeItem> shape_pair_or_triple(const AtomicStore& store,
                                                  std::span<const ScoredDoc> pool);
std::optional<KnowledgeItem> shape_pair_or_triple(const EdgeGraph& graph,
                                                  std::span<const LinkedEdge> pool,
                                                  std::uint64_t seed, bool random = true);

// ATOMIC paths [linked event, linked inference, answer event, answer
// inference]. QC links the question pool with the answer pool; A links
// each answer-pool pair with any pair retrieved by its own text. Linked
// pairs must share a content lemma. Ranked by combined score, ties by
// lower pair ids.
std::vector<KnowledgeItem> atomic_path_items(const AtomicStore& store, const ExtractionConfig& config,
                                             std::string_view question, std::string_view answer);

// Edge-graph paths of three distinct nodes. QC: question -> question ->
// answer. A: answer -> any -> any. Ranked by total edge weight, ties by the
// node lemmas.
std::vector<KnowledgeItem> edge_path_items(const EdgeGraph& graph, const ConceptLinker& linker,
                                           Conditioning conditioning, std::string_view question,
                                           std::string_view answer, std::size_t limit);

std::optional<KnowledgeItem> shape_path(const AtomicStore& store, const ExtractionConfig& config,
                                        std::string_view question, std::string_view answer);
std::optional<KnowledgeItem> shape_path(const EdgeGraph& graph, const ConceptLinker& linker,
                                        Conditioning conditioning, std::string_view question,
                                        std::string_view answer);

// ATOMIC: consecutive groups of `cap` pool pairs, best group first.
std::vector<KnowledgeItem> atomic_subgraph_items(const AtomicStore& store,
                                                 std::span<const ScoredDoc> pool, std::size_t cap);
// Edge graphs: one subgraph per anchor, anchors ranked by edge count
// (ties by lemma); each keeps its `cap` heaviest edges.
std::vector<KnowledgeItem> edge_subgraph_items(const EdgeGraph& graph,
                                               std::span<const LinkedEdge> pool, std::size_t cap);

std::optional<KnowledgeItem> shape_subgraph(const AtomicStore& store, std::span<const ScoredDoc> pool,
                                            std::size_t cap);
std::optional<KnowledgeItem> shape_subgraph(const EdgeGraph& graph, std::span<const LinkedEdge> pool,
                                            std::size_t cap);

// --- Filtering and subsets -----------------------------------------------

// HR: each candidate keeps its first item. HQ: items of all candidates are
// visited by descending score (ties: candidate index, then rank); a
// candidate without knowledge claims the first item whose rendered text is
// not yet claimed.
std::vector<std::optional<KnowledgeItem>> apply_filter(
    const std::vector<std::vector<KnowledgeItem>>& ranked, FilterMode filter);

struct SubsetSplit {
  ExtractionConfig config;
  std::size_t dataset_size = 0;
  int max_candidates = 0;
  std::map<int, std::vector<std::string>> ids;  // m -> instance ids, m = 0..max

  std::size_t count(int m) const;
};

SubsetSplit split_subsets(std::span<const ExtractionResult> results);
Json to_json(const SubsetSplit& s);
SubsetSplit subset_split_from_json(const Json& j);

// --- Driving extraction ---------------------------------------------------

class KnowledgeSource {
 public:
  virtual ~KnowledgeSource() = default;
  virtual std::vector<KnowledgeItem> ranked_items(const TaskInstance& instance,
                                                  std::size_t candidate,
                                                  const ExtractionConfig& config) const = 0;
};

class AtomicSource final : public KnowledgeSource {
 public:
  explicit AtomicSource(const AtomicStore& store) : store_(&store) {}
  std::vector<KnowledgeItem> ranked_items(const TaskInstance& instance, std::size_t candidate,
                                          const ExtractionConfig& config) const override;

 private:
  const AtomicStore* store_;
};

// One shared graph, or one graph per instance (instances without a graph
// get no knowledge).
class EdgeSource final : public KnowledgeSource {
 public:
  EdgeSource(const EdgeGraph& graph, const ConceptLinker& linker);
  EdgeSource(std::unordered_map<std::string, EdgeGraph> per_instance, const ConceptLinker& linker);

  std::vector<KnowledgeItem> ranked_items(const TaskInstance& instance, std::size_t candidate,
                                          const ExtractionConfig& config) const override;

 private:
  const EdgeGraph* graph_for(const std::string& instance_id) const;

  const EdgeGraph* shared_ = nullptr;
  std::unordered_map<std::string, EdgeGraph> per_instance_;
  const ConceptLinker* linker_;
};

// Seed used for one candidate's random draws.
std::uint64_t candidate_seed(std::uint64_t seed, std::string_view instance_id, std::size_t candidate);

ExtractionResult extract_instance(const KnowledgeSource& source, const TaskInstance& instance,
                                  const ExtractionConfig& config);

// Runs extract_instance over `tasks` on `jobs` workers; output order is
// task order whatever the worker count.
std::vector<ExtractionResult> extract_all(const KnowledgeSource& source,
                                          std::span<const TaskInstance> tasks,
                                          const ExtractionConfig& config, unsigned jobs);

}  // namespace kgmatch
