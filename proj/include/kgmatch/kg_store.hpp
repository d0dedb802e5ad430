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

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace kgmatch {

// The nine if-then inference dimensions of an event-inference corpus.
enum class Dimension : std::uint8_t {
  kXWant,
  kXNeed,
  kXIntent,
  kXReact,
  kXEffect,
  kXAttr,
  kOWant,
  kOReact,
  kOEffect,
};

inline constexpr std::array<Dimension, 9> kAllDimensions = {
    Dimension::kXWant,   Dimension::kXNeed,  Dimension::kXIntent,
    Dimension::kXReact,  Dimension::kXEffect, Dimension::kXAttr,
    Dimension::kOWant,   Dimension::kOReact, Dimension::kOEffect,
};

std::string_view to_string(Dimension d);
std::optional<Dimension> parse_dimension(std::string_view s);
// Throws DataError on anything but the nine labels.
Dimension dimension_from_string(std::string_view s);
// True for the x* dimensions, which concern PersonX.
bool is_agent_dimension(Dimension d);

struct EventInferencePair {
  std::uint32_t pair_id = 0;
  std::string event;
  Dimension dimension = Dimension::kXWant;
  std::string inference;

  // Document text used for retrieval: "event inference".
  std::string text() const { return event + " " + inference; }
  friend bool operator==(const EventInferencePair&, const EventInferencePair&) = default;
};

struct PairCorpus {
  std::vector<EventInferencePair> pairs;  // load order
  std::string source_name;

  const EventInferencePair& by_id(std::uint32_t pair_id) const;
};

struct LoadReport {
  std::size_t rows = 0;
  std::size_t skipped = 0;
  std::vector<std::string> warnings;
};

// Reads the normalized event<TAB>dimension<TAB>inference form. Rows with a
// bad dimension, wrong field count or empty text are skipped and counted;
// more than half skipped raises DataError. pair_id is the row's position
// among kept rows.
PairCorpus load_pair_corpus(const std::filesystem::path& path, LoadReport* report = nullptr);
PairCorpus parse_pair_corpus(std::istream& in, std::string source_name,
                             LoadReport* report = nullptr);

// RFC 4180 records: quoted fields may hold commas, doubled quotes and
// newlines. Throws DataError on an unterminated quote.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

// Flattens the native event-inference CSV (an "event" column, one column
// per dimension holding a JSON list of inferences, an optional "split"
// column) into pairs grouped by split, rows in file order and dimensions
// in kAllDimensions order. Rows without a split use `default_split`.
std::map<std::string, std::vector<EventInferencePair>> convert_atomic_csv(
    std::string_view text, std::string_view name, std::string_view default_split);

// Writes the normalized event<TAB>dimension<TAB>inference form.
void write_pair_tsv(std::ostream& out, std::span<const EventInferencePair> pairs);

enum class EdgeFormat { kAssertionsCsv, kEdgeTsv };
std::optional<EdgeFormat> parse_edge_format(std::string_view s);

struct ConceptNode {
  std::uint32_t node_id = 0;
  std::string lemma;    // lowercase, underscores join phrase words
  std::string surface;  // as it appeared in the source
};

struct RelationEdge {
  std::uint32_t head = 0;
  std::string relation;
  std::uint32_t tail = 0;
  double weight = 1.0;
};

// Immutable labeled multigraph keyed by concept lemma. Construct through
// EdgeGraphBuilder or load_edge_graph.
class EdgeGraph {
 public:
  EdgeGraph() = default;

  const std::vector<ConceptNode>& nodes() const { return nodes_; }
  const std::vector<RelationEdge>& edges() const { return edges_; }
  std::span<const std::uint32_t> outgoing(std::uint32_t node_id) const { return out_[node_id]; }
  std::span<const std::uint32_t> incoming(std::uint32_t node_id) const { return in_[node_id]; }
  std::optional<std::uint32_t> find(std::string_view lemma) const;
  const ConceptNode& node(std::uint32_t id) const { return nodes_[id]; }
  const std::string& lemma(std::uint32_t id) const { return nodes_[id].lemma; }
  const std::string& source_name() const { return source_name_; }
  // Longest node lemma, counted in underscore-separated words.
  std::size_t max_phrase_words() const { return max_phrase_words_; }

 private:
  friend class EdgeGraphBuilder;

  std::vector<ConceptNode> nodes_;
  std::vector<RelationEdge> edges_;
  std::vector<std::vector<std::uint32_t>> out_;
  std::vector<std::vector<std::uint32_t>> in_;
  std::unordered_map<std::string, std::uint32_t> by_lemma_;
  std::string source_name_;
  std::size_t max_phrase_words_ = 1;
};

class EdgeGraphBuilder {
 public:
  explicit EdgeGraphBuilder(std::string source_name);

  // Returns the node for `lemma`, creating it on first sight.
  std::uint32_t add_node(std::string_view lemma, std::string_view surface);
  // Duplicate (head, relation, tail) keeps one edge with the max weight.
  void add_edge(std::uint32_t head, std::string_view relation, std::uint32_t tail,
                double weight);
  std::size_t edge_count() const { return graph_.edges_.size(); }
  EdgeGraph build() &&;

 private:
  EdgeGraph graph_;
  std::unordered_map<std::string, std::uint32_t> edge_index_;
};

// Lowercases, trims, and joins inner whitespace with underscores.
std::string normalize_concept(std::string_view s);

struct EdgeLoadOptions {
  std::unordered_set<std::string> relation_blocklist;
};

// Throws DataError when the file is unreadable or no edge survives filtering.
EdgeGraph load_edge_graph(const std::filesystem::path& path, EdgeFormat format,
                          const EdgeLoadOptions& options = {}, LoadReport* report = nullptr);
EdgeGraph parse_edge_graph(std::istream& in, EdgeFormat format, std::string source_name,
                           const EdgeLoadOptions& options = {}, LoadReport* report = nullptr);

// Writes edge-tsv: head, relation, tail, weight.
void write_edge_tsv(std::ostream& out, const EdgeGraph& graph);

// Node ids for lemmas present in the graph, input order, misses dropped.
std::vector<std::uint32_t> lookup_concepts(const EdgeGraph& graph,
                                           std::span<const std::string> lemmas);

}  // namespace kgmatch
