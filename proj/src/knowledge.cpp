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

#include "kgmatch/knowledge.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "kgmatch/error.hpp"
#include "kgmatch/text.hpp"

namespace kgmatch {
namespace {

const std::map<std::string, std::string, std::less<>>& relation_phrases() {
  static const std::map<std::string, std::string, std::less<>> kPhrases = {
      {"Antonym", "is the opposite of"},
      {"AtLocation", "is found at"},
      {"CapableOf", "is capable of"},
      {"Causes", "causes"},
      {"CausesDesire", "makes you want"},
      {"CreatedBy", "is created by"},
      {"DefinedAs", "is defined as"},
      {"DerivedFrom", "is derived from"},
      {"Desires", "desires"},
      {"DistinctFrom", "is distinct from"},
      {"Entails", "entails"},
      {"EtymologicallyDerivedFrom", "is etymologically derived from"},
      {"EtymologicallyRelatedTo", "is etymologically related to"},
      {"FormOf", "is a form of"},
      {"HasA", "has"},
      {"HasContext", "is used in the context of"},
      {"HasFirstSubevent", "begins with"},
      {"HasLastSubevent", "ends with"},
      {"HasPrerequisite", "requires"},
      {"HasProperty", "has the property"},
      {"HasSubevent", "includes"},
      {"InstanceOf", "is an instance of"},
      {"IsA", "is a"},
      {"LocatedNear", "is located near"},
      {"MadeOf", "is made of"},
      {"MannerOf", "is a way of"},
      {"MotivatedByGoal", "is motivated by"},
      {"NotCapableOf", "is not capable of"},
      {"NotDesires", "does not desire"},
      {"NotHasProperty", "does not have the property"},
      {"NotUsedFor", "is not used for"},
      {"ObstructedBy", "is obstructed by"},
      {"PartOf", "is part of"},
      {"ReceivesAction", "can be"},
      {"RelatedTo", "is related to"},
      {"SimilarTo", "is similar to"},
      {"SymbolOf", "is a symbol of"},
      {"Synonym", "is a synonym of"},
      {"UsedFor", "is used for"},
  };
  return kPhrases;
}

std::string render_pair(const EventInferencePair& p) { return p.event + ". " + p.inference; }

Json triple_json(const Triple& t) {
  return Json{{"head", t.head}, {"relation", t.relation}, {"tail", t.tail}, {"weight", t.weight}};
}

Triple triple_from_json(const Json& j) {
  return {j.at("head").get<std::string>(), j.at("relation").get<std::string>(),
          j.at("tail").get<std::string>(), j.at("weight").get<double>()};
}

}  // namespace

std::string display_lemma(std::string_view lemma) {
  std::string out(lemma);
  std::replace(out.begin(), out.end(), '_', ' ');
  return out;
}

std::string relation_phrase(std::string_view relation) {
  const auto& table = relation_phrases();
  if (auto it = table.find(relation); it != table.end()) return it->second;
  std::string out;
  for (std::size_t i = 0; i < relation.size(); ++i) {
    char c = relation[i];
    if (c == '_' || c == '/') {
      out.push_back(' ');
      continue;
    }
    bool upper = std::isupper(static_cast<unsigned char>(c)) != 0;
    if (upper && i > 0 && !out.empty() && out.back() != ' ') out.push_back(' ');
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

std::string render_triple(const Triple& t) {
  return display_lemma(t.head) + " " + relation_phrase(t.relation) + " " + display_lemma(t.tail);
}

std::string render(const KnowledgeShape& shape) {
  struct Visitor {
    std::string operator()(const EventInferencePair& p) const { return render_pair(p); }
    std::string operator()(const Triple& t) const { return render_triple(t); }
    std::string operator()(const PathShape& p) const {
      std::vector<std::string> parts;
      for (const auto& e : p.elements) parts.push_back(p.lemma_elements ? display_lemma(e) : e);
      return join(parts, ". ");
    }
    std::string operator()(const SubgraphShape& g) const {
      std::vector<std::string> parts;
      for (const auto& e : g.edges) {
        parts.push_back(g.pair_edges ? e.head + ". " + e.tail : render_triple(e));
      }
      return join(parts, "; ");
    }
  };
  return std::visit(Visitor{}, shape);
}

std::string_view KnowledgeItem::shape_name() const {
  switch (shape.index()) {
    case 0: return "pair";
    case 1: return "triple";
    case 2: return "path";
    default: return "subgraph";
  }
}

KnowledgeItem make_item(KnowledgeShape shape, double score, Provenance provenance) {
  if (auto* p = std::get_if<PathShape>(&shape); p && p->elements.size() < 3) {
    throw Error("path knowledge needs at least three elements");
  }
  if (auto* g = std::get_if<SubgraphShape>(&shape); g && g->edges.empty()) {
    throw Error("subgraph knowledge needs at least one edge");
  }
  KnowledgeItem item{std::move(shape), score, {}, std::move(provenance)};
  item.rendered = render(item.shape);
  return item;
}

Json to_json(const KnowledgeItem& item) {
  Json content;
  if (auto* p = std::get_if<EventInferencePair>(&item.shape)) {
    content = {{"pair_id", p->pair_id},
               {"event", p->event},
               {"dimension", std::string(to_string(p->dimension))},
               {"inference", p->inference}};
  } else if (auto* t = std::get_if<Triple>(&item.shape)) {
    content = triple_json(*t);
  } else if (auto* path = std::get_if<PathShape>(&item.shape)) {
    content = {{"elements", path->elements}, {"lemma_elements", path->lemma_elements}};
  } else {
    const auto& g = std::get<SubgraphShape>(item.shape);
    Json edges = Json::array();
    for (const auto& e : g.edges) edges.push_back(triple_json(e));
    content = {{"nodes", g.nodes}, {"edges", edges}, {"pair_edges", g.pair_edges}};
  }
  return Json{{"present", true},
              {"shape", std::string(item.shape_name())},
              {"rendered", item.rendered},
              {"score", item.score},
              {"provenance", {{"source", item.provenance.source}, {"ids", item.provenance.ids}}},
              {"content", content}};
}

KnowledgeItem knowledge_item_from_json(const Json& j) {
  try {
    const auto shape = j.at("shape").get<std::string>();
    const auto& c = j.at("content");
    KnowledgeShape s;
    if (shape == "pair") {
      s = EventInferencePair{c.at("pair_id").get<std::uint32_t>(), c.at("event").get<std::string>(),
                             dimension_from_string(c.at("dimension").get<std::string>()),
                             c.at("inference").get<std::string>()};
    } else if (shape == "triple") {
      s = triple_from_json(c);
    } else if (shape == "path") {
      s = PathShape{c.at("elements").get<std::vector<std::string>>(),
                    c.at("lemma_elements").get<bool>()};
    } else if (shape == "subgraph") {
      SubgraphShape g;
      g.nodes = c.at("nodes").get<std::vector<std::string>>();
      for (const auto& e : c.at("edges")) g.edges.push_back(triple_from_json(e));
      g.pair_edges = c.at("pair_edges").get<bool>();
      s = std::move(g);
    } else {
      throw DataError("unknown knowledge shape '" + shape + "'");
    }
    Provenance prov{j.at("provenance").at("source").get<std::string>(),
                    j.at("provenance").at("ids").get<std::vector<std::uint64_t>>()};
    auto item = make_item(std::move(s), j.at("score").get<double>(), std::move(prov));
    if (item.rendered != j.at("rendered").get<std::string>()) {
      throw DataError("rendered text does not match knowledge content");
    }
    return item;
  } catch (const Json::exception& e) {
    throw DataError(std::string("bad knowledge record: ") + e.what());
  }
}

}  // namespace kgmatch
