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


#include <sstream>

#include "doctest.h"
#include "kgmatch/error.hpp"
#include "kgmatch/wikihow.hpp"
#include "support.hpp"

using namespace kgmatch;
using namespace kgmatch::testing;

namespace {

constexpr const char* kThreeParses =
    "# instance_id = p1\n"
    "# source = goal\n"
    "1\tboil\tboil\tVERB\t_\t_\t0\troot\t_\t_\n"
    "2\teggs\tegg\tNOUN\t_\t_\t1\tobj\t_\t_\n"
    "\n"
    "# source = title\n"
    "1\tBoil\tboil\tVERB\t_\t_\t0\troot\t_\t_\n"
    "2\twater\twater\tNOUN\t_\t_\t1\tobj\t_\t_\n"
    "3\teggs\tegg\tNOUN\t_\t_\t1\tobj\t_\t_\n"
    "\n"
    "# source = para-0\n"
    "1\tPut\tput\tVERB\t_\t_\t0\troot\t_\t_\n"
    "2\tthe\tthe\tDET\t_\t_\t3\tdet\t_\t_\n"
    "3\tegg\tegg\tNOUN\t_\t_\t1\tobj\t_\t_\n"
    "3.1\tx\tx\tNOUN\t_\t_\t_\t_\t_\t_\n"
    "4\tin\tin\tADP\t_\t_\t5\tcase\t_\t_\n"
    "5\twater\t_\tNOUN\t_\t_\t1\tobl\t_\t_\n"
    "\n";

const RelationEdge* edge(const EdgeGraph& g, std::string_view h, std::string_view rel, std::string_view t) {
  for (const auto& e : g.edges())
    if (g.lemma(e.head) == h && e.relation == rel && g.lemma(e.tail) == t) return &e;
  return nullptr;
}

}  // namespace

TEST_CASE("parse exchange reading") {
  std::istringstream in(kThreeParses);
  const auto groups = parse_parse_exchange(in, "three");
  REQUIRE(groups.size() == 3);
  CHECK(groups[0].instance_id == "p1");
  CHECK(groups[1].instance_id == "p1");
  CHECK(groups[2].source == "para-0");
  const auto& last = groups[2].sentences.at(0).tokens;
  REQUIRE(last.size() == 5);
  CHECK(last[4].lemma == "water");
  CHECK(last[4].head == 1);
}

TEST_CASE("hand-built three-parse graph") {
  std::istringstream in(kThreeParses);
  const auto groups = parse_parse_exchange(in, "three");
  const auto g = build_instance_graph(groups, "p1");
  REQUIRE(g.nodes().size() == 4);
  CHECK(g.lemma(0) == "boil");
  CHECK(g.lemma(1) == "egg");
  CHECK(g.lemma(2) == "water");
  CHECK(g.lemma(3) == "put");
  REQUIRE(g.edges().size() == 4);
  CHECK(edge(g, "boil", "obj", "egg")->weight == 2.0);
  CHECK(edge(g, "boil", "obj", "water")->weight == 1.0);
  CHECK(edge(g, "put", "obj", "egg")->weight == 1.0);
  CHECK(edge(g, "put", "obl", "water")->weight == 1.0);
  CHECK(edge(g, "egg", "det", "the") == nullptr);
}

TEST_CASE("a lemma seen in one parse only is not a concept") {
  std::istringstream in(
      "# instance_id = q\n# source = goal\n1\trun\trun\tVERB\t_\t_\t0\troot\t_\t_\n"
      "2\tfast\tfast\tADV\t_\t_\t1\tadvmod\t_\t_\n\n"
      "# source = title\n1\tjump\tjump\tVERB\t_\t_\t0\troot\t_\t_\n\n");
  const auto g = build_instance_graph(parse_parse_exchange(in, "q"), "q");
  CHECK(g.nodes().empty());
  CHECK(g.edges().empty());
}

TEST_CASE("parse exchange round-trip") {
  std::istringstream in(kThreeParses);
  const auto groups = parse_parse_exchange(in, "three");
  std::ostringstream out;
  write_parse_exchange(out, groups);
  std::istringstream back(out.str());
  CHECK(parse_parse_exchange(back, "again") == groups);
}

TEST_CASE("malformed parses are data errors") {
  std::istringstream two_roots("# instance_id = a\n1\ta\ta\tNOUN\t_\t_\t0\troot\t_\t_\n2\tb\tb\tNOUN\t_\t_\t0\troot\t_\t_\n\n");
  CHECK_THROWS_AS(parse_parse_exchange(two_roots, "x"), DataError);
  std::istringstream bad_head("# instance_id = a\n1\ta\ta\tNOUN\t_\t_\t0\troot\t_\t_\n2\tb\tb\tNOUN\t_\t_\t7\tobj\t_\t_\n\n");
  CHECK_THROWS_AS(parse_parse_exchange(bad_head, "x"), DataError);
  std::istringstream short_row("# instance_id = a\n1\ta\ta\n\n");
  CHECK_THROWS_AS(parse_parse_exchange(short_row, "x"), DataError);
  std::istringstream no_id("1\ta\ta\tNOUN\t_\t_\t0\troot\t_\t_\n\n");
  CHECK_THROWS_AS(parse_parse_exchange(no_id, "x"), DataError);
}

TEST_CASE("content tags cover UD and PTB") {
  for (auto t : {"NOUN", "PROPN", "VERB", "ADJ", "NN", "NNS", "VBD", "JJR"}) CHECK(is_content_pos(t));
  for (auto t : {"DET", "ADP", "AUX", "PUNCT", "IN", "DT"}) CHECK_FALSE(is_content_pos(t));
}

TEST_CASE("title retrieval and parse requests") {
  const auto articles = load_articles(fixture("wikihow_articles.jsonl"));
  CHECK(articles.size() == 100);
  const auto index = build_title_index(articles, shipped_tokenizer());
  const auto hits = retrieve_titles(index, "How do I boil an egg at home?", 2);
  REQUIRE_FALSE(hits.empty());
  CHECK(articles[hits[0].doc_id].title == "How to Boil an Egg");
  std::vector<const WikiHowArticle*> ranked = {&articles[0], &articles[1]};
  const auto req = parse_requests("p", "How  do I boil an egg?", ranked);
  REQUIRE(req.size() == 1 + 2 * 5);
  CHECK(req[0].source == "goal");
  CHECK(req[0].text == "How do I boil an egg?");
  CHECK(req[1].source == "title");
  CHECK(req[2].source == "para-0");
  CHECK(req[6].source == "title-2");
  CHECK(req[7].source == "para-2-0");
  CHECK(to_json(req[2])["text"] == "Get a clean pot before you boil the egg.");
}

TEST_CASE("graph directories round-trip") {
  std::istringstream in(kThreeParses);
  const auto g = build_instance_graph(parse_parse_exchange(in, "three"), "p1");
  TempDir dir("graphs");
  const auto files = write_graph_dir(dir.path(), {{"p1", g}, {"empty", EdgeGraph()}});
  CHECK(files == std::vector<std::string>{"graph-00000.tsv", "index.tsv"});
  const auto back = load_graph_dir(dir.path());
  REQUIRE(back.size() == 1);
  CHECK(back.at("p1").edges().size() == 4);
  CHECK(edge(back.at("p1"), "boil", "obj", "egg")->weight == 2.0);
}

TEST_CASE("article validation") {
  TempDir dir("articles");
  write_file(dir / "a.jsonl", R"({"article_id": "a", "title": "", "paragraph": "x"})" "\n");
  CHECK_THROWS_AS(load_articles(dir / "a.jsonl"), DataError);
}
