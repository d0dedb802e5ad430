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

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kgmatch/io.hpp"
#include "kgmatch/kg_store.hpp"
#include "kgmatch/text_index.hpp"

namespace kgmatch {

struct WikiHowArticle {
  std::string article_id;
  std::string title;
  std::string paragraph;
};

// Line-delimited {article_id, title, paragraph}. Empty titles and repeated
// ids are data errors.
std::vector<WikiHowArticle> load_articles(const std::filesystem::path& path);

// Title index whose doc ids are positions in `articles`.
TfIdfIndex build_title_index(std::span<const WikiHowArticle> articles, const Tokenizer& tokenizer);

std::vector<ScoredDoc> retrieve_titles(const TfIdfIndex& title_index, std::string_view goal,
                                       std::size_t k);

struct ParsedToken {
  int index = 0;  // 1-based
  std::string surface;
  std::string lemma;
  std::string pos;
  int head = 0;  // 0 = root
  std::string deprel;
  friend bool operator==(const ParsedToken&, const ParsedToken&) = default;
};

struct ParsedSentence {
  std::vector<ParsedToken> tokens;

  // Throws DataError unless indices run 1..n, heads lie in 0..n and exactly
  // one token is the root.
  void validate() const;
  friend bool operator==(const ParsedSentence&, const ParsedSentence&) = default;
};

// All sentences parsed for one (instance, source) key. Sources are "goal",
// "title" and "para-<i>"; titles retrieved below rank 1 use "title-<r>" and
// "para-<r>-<i>".
struct ParseGroup {
  std::string instance_id;
  std::string source;
  std::vector<ParsedSentence> sentences;
  friend bool operator==(const ParseGroup&, const ParseGroup&) = default;
};

// Ten tab-separated columns per token, blank line between sentences. Each
// sentence is preceded by "# instance_id = ..." and "# source = ..."
// comments; a sentence inherits the previous keys when they are omitted.
// CoNLL-U range and empty-node lines are ignored. Sentences with the same
// key are grouped in file order.
std::vector<ParseGroup> parse_parse_exchange(std::istream& in, std::string_view name);
std::vector<ParseGroup> load_parse_exchange(const std::filesystem::path& path);
void write_parse_exchange(std::ostream& out, std::span<const ParseGroup> groups);

// Noun, proper noun, verb or adjective in UD or Penn tags.
bool is_content_pos(std::string_view pos);

// Concept nodes are content lemmas found in at least two groups. Every arc
// between two content tokens with different lemmas, one of them a concept,
// becomes an edge labeled with the dependency relation and weighted by its
// occurrence count.
EdgeGraph build_instance_graph(std::span<const ParseGroup> groups, std::string source_name);

// Sentences to send to an external parser for one instance.
struct ParseRequest {
  std::string instance_id;
  std::string source;
  std::string text;
};

std::vector<ParseRequest> parse_requests(std::string_view instance_id, std::string_view goal,
                                         std::span<const WikiHowArticle* const> ranked_articles);
Json to_json(const ParseRequest& r);

// Graph directory: index.tsv (instance_id, file, nodes, edges) plus one
// edge-tsv file per instance; empty graphs are left out. Returns the file
// names written, index.tsv last.
std::vector<std::string> write_graph_dir(const std::filesystem::path& dir,
                     const std::vector<std::pair<std::string, EdgeGraph>>& graphs);
std::unordered_map<std::string, EdgeGraph> load_graph_dir(const std::filesystem::path& dir);

}  // namespace kgmatch
