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

#include "kgmatch/wikihow.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include <fmt/format.h>

#include "kgmatch/error.hpp"
#include "kgmatch/text.hpp"

namespace kgmatch {
namespace {

int parse_int(std::string_view s, std::string_view what) {
  int v = 0;
  if (s.empty()) throw DataError(fmt::format("empty {}", what));
  for (char c : s) {
    if (c < '0' || c > '9') throw DataError(fmt::format("bad {} '{}'", what, s));
    v = v * 10 + (c - '0');
  }
  return v;
}

std::string_view comment_value(std::string_view line, std::string_view key) {
  // "# key = value"
  auto body = trim(line.substr(1));
  if (body.substr(0, key.size()) != key) return {};
  auto rest = trim(body.substr(key.size()));
  if (rest.empty() || rest.front() != '=') return {};
  return trim(rest.substr(1));
}

}  // namespace

std::vector<WikiHowArticle> load_articles(const std::filesystem::path& path) {
  std::vector<WikiHowArticle> out;
  std::set<std::string> seen;
  for_each_jsonl(path, [&](const Json& j, std::size_t line) {
    auto where = fmt::format("{}:{}", path.string(), line);
    WikiHowArticle a;
    try {
      a.article_id = j.at("article_id").is_string() ? j.at("article_id").get<std::string>()
                                                     : j.at("article_id").dump();
      a.title = normalize_whitespace(j.at("title").get<std::string>());
      a.paragraph = j.at("paragraph").get<std::string>();
    } catch (const Json::exception& e) {
      throw DataError(fmt::format("{}: {}", where, e.what()));
    }
    if (a.title.empty()) throw DataError(where + ": empty title");
    if (!seen.insert(a.article_id).second)
      throw DataError(where + ": duplicate article_id " + a.article_id);
    out.push_back(std::move(a));
  });
  return out;
}

TfIdfIndex build_title_index(std::span<const WikiHowArticle> articles, const Tokenizer& tokenizer) {
  std::vector<std::pair<DocId, std::string>> docs;
  for (std::size_t i = 0; i < articles.size(); ++i) docs.emplace_back(i, articles[i].title);
  return TfIdfIndex(std::move(docs), tokenizer);
}

std::vector<ScoredDoc> retrieve_titles(const TfIdfIndex& title_index, std::string_view goal,
                                       std::size_t k) {
  return title_index.score_top_k(goal, k);
}

void ParsedSentence::validate() const {
  const int n = static_cast<int>(tokens.size());
  if (n == 0) throw DataError("empty sentence");
  int roots = 0;
  for (int i = 0; i < n; ++i) {
    const auto& t = tokens[static_cast<std::size_t>(i)];
    if (t.index != i + 1)
      throw DataError(fmt::format("token index {} out of sequence (expected {})", t.index, i + 1));
    if (t.head < 0 || t.head > n)
      throw DataError(fmt::format("token {} has head {} outside 0..{}", t.index, t.head, n));
    if (t.head == t.index) throw DataError(fmt::format("token {} heads itself", t.index));
    if (t.head == 0) ++roots;
  }
  if (roots != 1) throw DataError(fmt::format("sentence has {} roots", roots));
}

std::vector<ParseGroup> parse_parse_exchange(std::istream& in, std::string_view name) {
  std::vector<ParseGroup> groups;
  std::map<std::pair<std::string, std::string>, std::size_t> slot;
  std::string instance_id;
  std::string source;
  ParsedSentence current;
  std::size_t start_line = 0;

  auto flush = [&](std::size_t line_no) {
    if (current.tokens.empty()) return;
    try {
      current.validate();
    } catch (const DataError& e) {
      throw DataError(fmt::format("{}:{}: {}", name, start_line, e.what()));
    }
    if (instance_id.empty() || source.empty())
      throw DataError(fmt::format("{}:{}: sentence without instance_id/source", name, start_line));
    auto key = std::make_pair(instance_id, source);
    auto [it, fresh] = slot.try_emplace(key, groups.size());
    if (fresh) groups.push_back(ParseGroup{instance_id, source, {}});
    groups[it->second].sentences.push_back(std::move(current));
    current = {};
    (void)line_no;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) {
      flush(line_no);
      continue;
    }
    if (line.front() == '#') {
      if (!current.tokens.empty()) flush(line_no);
      if (auto v = comment_value(line, "instance_id"); !v.empty()) instance_id = v;
      if (auto v = comment_value(line, "source"); !v.empty()) source = v;
      continue;
    }
    auto cols = split(line, '\t');
    if (cols.size() != 10)
      throw DataError(fmt::format("{}:{}: expected 10 columns, found {}", name, line_no, cols.size()));
    if (cols[0].find_first_of("-.") != std::string::npos) continue;
    if (current.tokens.empty()) start_line = line_no;
    try {
      ParsedToken t;
      t.index = parse_int(cols[0], "token index");
      t.surface = cols[1];
      t.lemma = cols[2] == "_" ? to_lower(cols[1]) : to_lower(cols[2]);
      t.pos = cols[3];
      t.head = parse_int(cols[6], "head");
      t.deprel = cols[7];
      current.tokens.push_back(std::move(t));
    } catch (const DataError& e) {
      throw DataError(fmt::format("{}:{}: {}", name, line_no, e.what()));
    }
  }
  flush(line_no);
  return groups;
}

std::vector<ParseGroup> load_parse_exchange(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read " + path.string());
  return parse_parse_exchange(in, path.string());
}

void write_parse_exchange(std::ostream& out, std::span<const ParseGroup> groups) {
  for (const auto& g : groups) {
    for (const auto& s : g.sentences) {
      out << "# instance_id = " << g.instance_id << '\n' << "# source = " << g.source << '\n';
      for (const auto& t : s.tokens) {
        out << t.index << '\t' << t.surface << '\t' << t.lemma << '\t' << t.pos << "\t_\t_\t"
            << t.head << '\t' << t.deprel << "\t_\t_\n";
      }
      out << '\n';
    }
  }
}

bool is_content_pos(std::string_view pos) {
  static const std::set<std::string_view> kTags = {"NOUN", "PROPN", "VERB", "ADJ", "NN",  "NNS",
                                                   "NNP",  "NNPS",  "VB",   "VBD", "VBG", "VBN",
                                                   "VBP",  "VBZ",   "JJ",   "JJR", "JJS"};
  return kTags.count(pos) > 0;
}

EdgeGraph build_instance_graph(std::span<const ParseGroup> groups, std::string source_name) {
  // Lemma -> number of groups it occurs in (content tokens only).
  std::map<std::string, std::set<std::size_t>> seen_in;
  std::map<std::string, std::string> surface;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (const auto& s : groups[g].sentences) {
      for (const auto& t : s.tokens) {
        if (!is_content_pos(t.pos)) continue;
        auto lemma = normalize_concept(t.lemma);
        if (lemma.empty()) continue;
        seen_in[lemma].insert(g);
        surface.try_emplace(lemma, t.surface);
      }
    }
  }
  std::set<std::string> concepts;
  for (const auto& [lemma, where] : seen_in)
    if (where.size() >= 2) concepts.insert(lemma);

  std::map<std::tuple<std::string, std::string, std::string>, int> arcs;
  for (const auto& g : groups) {
    for (const auto& s : g.sentences) {
      for (const auto& dep : s.tokens) {
        if (dep.head == 0) continue;
        const auto& head = s.tokens[static_cast<std::size_t>(dep.head - 1)];
        if (!is_content_pos(dep.pos) || !is_content_pos(head.pos)) continue;
        auto h = normalize_concept(head.lemma);
        auto d = normalize_concept(dep.lemma);
        if (h.empty() || d.empty() || h == d) continue;
        if (!concepts.count(h) && !concepts.count(d)) continue;
        ++arcs[{h, dep.deprel, d}];
      }
    }
  }

  EdgeGraphBuilder builder(std::move(source_name));
  for (const auto& c : concepts) builder.add_node(c, surface[c]);
  for (const auto& [key, count] : arcs) {
    const auto& [h, rel, d] = key;
    const auto hid = builder.add_node(h, surface[h]);
    const auto did = builder.add_node(d, surface[d]);
    builder.add_edge(hid, rel, did, static_cast<double>(count));
  }
  return std::move(builder).build();
}

std::vector<ParseRequest> parse_requests(std::string_view instance_id, std::string_view goal,
                                         std::span<const WikiHowArticle* const> ranked_articles) {
  std::vector<ParseRequest> out;
  const std::string id(instance_id);
  out.push_back({id, "goal", normalize_whitespace(goal)});
  for (std::size_t r = 0; r < ranked_articles.size(); ++r) {
    const auto* a = ranked_articles[r];
    const std::string suffix = r == 0 ? "" : "-" + std::to_string(r + 1);
    out.push_back({id, "title" + suffix, a->title});
    const auto sentences = segment_sentences(a->paragraph);
    for (std::size_t i = 0; i < sentences.size(); ++i)
      out.push_back({id, fmt::format("para{}-{}", suffix, i), sentences[i]});
  }
  return out;
}

Json to_json(const ParseRequest& r) {
  return Json{{"instance_id", r.instance_id}, {"source", r.source}, {"text", r.text}};
}

std::vector<std::string> write_graph_dir(const std::filesystem::path& dir,
                     const std::vector<std::pair<std::string, EdgeGraph>>& graphs) {
  std::ostringstream index;
  index << "# instance_id\tfile\tnodes\tedges\n";
  std::size_t n = 0;
  std::vector<std::string> files;
  for (const auto& [id, graph] : graphs) {
    if (graph.edges().empty()) continue;
    const auto file = fmt::format("graph-{:05d}.tsv", n++);
    std::ostringstream body;
    write_edge_tsv(body, graph);
    write_file(dir / file, body.str());
    files.push_back(file);
    index << id << '\t' << file << '\t' << graph.nodes().size() << '\t' << graph.edges().size()
          << '\n';
  }
  write_file(dir / "index.tsv", index.str());
  files.push_back("index.tsv");
  return files;
}

std::unordered_map<std::string, EdgeGraph> load_graph_dir(const std::filesystem::path& dir) {
  std::unordered_map<std::string, EdgeGraph> out;
  std::istringstream index(read_file(dir / "index.tsv"));
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(index, line)) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    auto cols = split(line, '\t');
    if (cols.size() < 2)
      throw DataError(fmt::format("{}:{}: expected instance_id and file", (dir / "index.tsv").string(), line_no));
    auto graph = load_edge_graph(dir / cols[1], EdgeFormat::kEdgeTsv);
    if (!out.emplace(cols[0], std::move(graph)).second)
      throw DataError("graph index lists instance " + cols[0] + " twice");
  }
  return out;
}

}  // namespace kgmatch
