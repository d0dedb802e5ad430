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
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace kgmatch {

enum class CoarsePos { kNoun, kVerb, kAdj, kAdv, kAux, kDet, kPron, kAdp, kConj, kPart, kOther };

std::optional<CoarsePos> parse_coarse_pos(std::string_view tag);
std::string_view to_string(CoarsePos pos);

// Versioned lemma / POS / antonym tables. Each table maps a key to an
// ordered list of values; lookups return the first value.
class LexicalResource {
 public:
  using Table = std::vector<std::pair<std::string, std::string>>;

  LexicalResource() = default;
  LexicalResource(const Table& lemmas, const Table& pos, const Table& antonyms);

  // Reads lemmas.tsv, pos.tsv and antonyms.tsv from `dir`.
  static LexicalResource load(const std::filesystem::path& dir);

  // First lemma entry for the lowercased surface, else the surface itself.
  std::string lemma(std::string_view surface) const;
  std::optional<std::string> antonym(std::string_view lemma) const;
  std::optional<CoarsePos> pos(std::string_view surface) const;

  std::size_t lemma_entries() const { return lemma_count_; }
  std::size_t antonym_entries() const { return antonym_count_; }

 private:
  std::unordered_map<std::string, std::string> lemmas_;
  std::unordered_map<std::string, std::string> antonyms_;
  std::unordered_map<std::string, CoarsePos> pos_;
  std::size_t lemma_count_ = 0;
  std::size_t antonym_count_ = 0;
};

std::filesystem::path default_resource_dir();

}  // namespace kgmatch
