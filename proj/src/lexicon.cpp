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

#include "kgmatch/lexicon.hpp"

#include <array>
#include <fstream>

#include "kgmatch/error.hpp"
#include "kgmatch/text.hpp"

namespace kgmatch {
namespace {

constexpr std::array<std::string_view, 11> kPosNames = {
    "NOUN", "VERB", "ADJ", "ADV", "AUX", "DET", "PRON", "ADP", "CONJ", "PART", "X",
};

LexicalResource::Table read_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read lexical table " + path.string());
  LexicalResource::Table rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw DataError(path.string() + ":" + std::to_string(lineno) + ": expected two columns");
    }
    rows.emplace_back(line.substr(0, tab), line.substr(tab + 1));
  }
  return rows;
}

}  // namespace

std::optional<CoarsePos> parse_coarse_pos(std::string_view tag) {
  for (std::size_t i = 0; i < kPosNames.size(); ++i) {
    if (kPosNames[i] == tag) return static_cast<CoarsePos>(i);
  }
  return std::nullopt;
}

std::string_view to_string(CoarsePos pos) { return kPosNames[static_cast<std::size_t>(pos)]; }

LexicalResource::LexicalResource(const Table& lemmas, const Table& pos, const Table& antonyms) {
  for (const auto& [k, v] : lemmas) lemmas_.try_emplace(to_lower(k), v);
  for (const auto& [k, v] : antonyms) antonyms_.try_emplace(to_lower(k), v);
  for (const auto& [k, v] : pos) {
    auto p = parse_coarse_pos(v);
    if (!p) throw DataError("unknown POS tag '" + v + "' for '" + k + "'");
    pos_.try_emplace(to_lower(k), *p);
  }
  lemma_count_ = lemmas.size();
  antonym_count_ = antonyms.size();
}

LexicalResource LexicalResource::load(const std::filesystem::path& dir) {
  return LexicalResource(read_table(dir / "lemmas.tsv"), read_table(dir / "pos.tsv"),
                         read_table(dir / "antonyms.tsv"));
}

std::string LexicalResource::lemma(std::string_view surface) const {
  auto key = to_lower(surface);
  auto it = lemmas_.find(key);
  return it == lemmas_.end() ? key : it->second;
}

std::optional<std::string> LexicalResource::antonym(std::string_view lemma) const {
  auto it = antonyms_.find(to_lower(lemma));
  if (it == antonyms_.end()) return std::nullopt;
  return it->second;
}

std::optional<CoarsePos> LexicalResource::pos(std::string_view surface) const {
  auto it = pos_.find(to_lower(surface));
  if (it == pos_.end()) return std::nullopt;
  return it->second;
}

std::filesystem::path default_resource_dir() { return KGMATCH_RESOURCE_DIR; }

}  // namespace kgmatch
