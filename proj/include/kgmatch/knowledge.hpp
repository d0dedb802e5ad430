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
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "kgmatch/io.hpp"
#include "kgmatch/kg_store.hpp"

namespace kgmatch {

struct Triple {
  std::string head;  // lemma
  std::string relation;
  std::string tail;  // lemma
  double weight = 1.0;
  friend bool operator==(const Triple&, const Triple&) = default;
};

struct PathShape {
  std::vector<std::string> elements;  // at least three
  // Elements are graph lemmas (underscored phrases) rather than free text.
  bool lemma_elements = false;
  friend bool operator==(const PathShape&, const PathShape&) = default;
};

struct SubgraphShape {
  std::vector<std::string> nodes;  // sorted, unique
  std::vector<Triple> edges;       // at least one
  // Edges are event -dimension-> inference pairs, rendered as pairs.
  bool pair_edges = false;
  friend bool operator==(const SubgraphShape&, const SubgraphShape&) = default;
};

using KnowledgeShape = std::variant<EventInferencePair, Triple, PathShape, SubgraphShape>;

struct Provenance {
  std::string source;
  std::vector<std::uint64_t> ids;  // pair ids or edge indices
  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct KnowledgeItem {
  KnowledgeShape shape;
  double score = 0;
  std::string rendered;
  Provenance provenance;

  std::string_view shape_name() const;
  friend bool operator==(const KnowledgeItem&, const KnowledgeItem&) = default;
};

// Builds an item with its rendered text; throws Error on a path shorter
// than three elements or an empty subgraph.
KnowledgeItem make_item(KnowledgeShape shape, double score, Provenance provenance);

// Pair -> "event. inference"; Triple -> "head <phrase> tail";
// Path -> elements joined by ". "; Subgraph -> edges joined by "; ".
std::string render(const KnowledgeShape& shape);
std::string render_triple(const Triple& t);

// Fixed English phrase for a relation label, e.g. Antonym -> "is the opposite of".
// Unknown labels are split at case changes and lowercased.
std::string relation_phrase(std::string_view relation);

// Underscores to spaces.
std::string display_lemma(std::string_view lemma);

Json to_json(const KnowledgeItem& item);
KnowledgeItem knowledge_item_from_json(const Json& j);

}  // namespace kgmatch
