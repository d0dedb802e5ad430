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


// Reference implementations used only by tests. They favour the most direct
// formulation over speed and share no ranking code with the library.
#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kgmatch/extractor.hpp"
#include "kgmatch/kg_store.hpp"
#include "kgmatch/lexicon.hpp"
#include "kgmatch/text_index.hpp"

namespace kgmatch::testing {

inline constexpr double kTieEpsilon = 1e-9;

// Orders by score descending; scores closer than kTieEpsilon count as tied
// and fall back to ascending doc id.
void order_with_ties(std::vector<ScoredDoc>& docs);

// Dense-vector tf-idf with cosine similarity over the full vocabulary.
class DenseTfIdf {
 public:
  DenseTfIdf(const std::vector<std::pair<DocId, std::string>>& docs, const Tokenizer& tokenizer);

  double score(std::string_view query, DocId doc) const;
  // Every doc with a positive score, best first, at most k.
  std::vector<ScoredDoc> rank(std::string_view query, std::size_t k) const;

 private:
  std::vector<double> embed(std::string_view text) const;

  const Tokenizer* tokenizer_;
  std::vector<std::string> vocab_;  // sorted
  std::vector<double> idf_;
  std::vector<DocId> ids_;
  std::vector<std::vector<double>> vectors_;
};

std::vector<std::pair<DocId, std::string>> atomic_documents(const PairCorpus& corpus);

std::set<std::string> lemma_set(std::string_view text, const Tokenizer& tokenizer,
                                const LexicalResource& lexicon);

struct PathCombo {
  DocId linked = 0;
  DocId answer = 0;
  double score = 0;
};

// Every linked (pool x pool) combination under the documented combined
// score, ranked, deduplicated and capped at `pool_size`.
std::vector<PathCombo> enumerate_atomic_paths(const PairCorpus& corpus, const DenseTfIdf& dense,
                                              const Tokenizer& tokenizer, const LexicalResource& lexicon,
                                              Conditioning conditioning, PathScore mode,
                                              std::string_view question, std::string_view answer,
                                              std::size_t pool_size);

// Greedy assignment over the global (score desc, candidate asc, rank asc)
// order of every ranked entry; returns the chosen rank per candidate.
std::vector<std::optional<std::size_t>> global_order_assignment(
    const std::vector<std::vector<KnowledgeItem>>& ranked);

}  // namespace kgmatch::testing
