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
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace kgmatch {

// Lowercased alphanumeric runs with stopwords removed. Non-ASCII bytes are
// kept inside runs so UTF-8 words survive intact.
class Tokenizer {
 public:
  Tokenizer() = default;
  explicit Tokenizer(std::unordered_set<std::string> stopwords);

  // One word per line, '#' starts a comment line.
  static Tokenizer from_file(const std::filesystem::path& path);

  std::vector<std::string> tokenize(std::string_view text) const;
  // Every lowercased token, stopwords included.
  std::vector<std::string> words(std::string_view text) const;
  bool is_stopword(std::string_view token) const;
  std::size_t stopword_count() const { return stopwords_.size(); }

 private:
  std::unordered_set<std::string> stopwords_;
};

using DocId = std::uint64_t;

struct Posting {
  DocId doc_id = 0;
  std::uint32_t tf = 0;
};

struct ScoredDoc {
  DocId doc_id = 0;
  double score = 0;
  friend bool operator==(const ScoredDoc&, const ScoredDoc&) = default;
};

// Cosine tf-idf retrieval. Weights are raw tf times
// idf(t) = ln(N / (1 + df(t))) + 1; query terms outside the vocabulary are
// dropped. Read-only after construction.
class TfIdfIndex {
 public:
  // Throws UsageError on a duplicate doc_id.
  TfIdfIndex(std::vector<std::pair<DocId, std::string>> docs, Tokenizer tokenizer);

  std::size_t doc_count() const { return doc_ids_.size(); }
  const Tokenizer& tokenizer() const { return tokenizer_; }

  // Highest-scoring docs first, ties by ascending doc_id, zero scores
  // excluded, at most k entries. Throws UsageError when k == 0.
  std::vector<ScoredDoc> score_top_k(std::string_view query, std::size_t k) const;

  // Scores only `candidates` (all of them, zeros included) in the same
  // descending order. Unknown doc ids raise UsageError.
  std::vector<ScoredDoc> score_subset(std::string_view query,
                                      std::span<const DocId> candidates) const;

  std::span<const Posting> postings(std::string_view term) const;
  double idf(std::string_view term) const;
  double doc_norm(DocId doc_id) const;
  std::size_t vocabulary_size() const { return terms_.size(); }

 private:
  struct TermEntry {
    double idf = 0;
    std::vector<Posting> postings;  // ascending doc_id
  };
  struct QueryTerm {
    const TermEntry* entry;
    double weight;
  };

  std::vector<QueryTerm> query_vector(std::string_view query, double* norm) const;
  std::size_t slot_of(DocId doc_id) const;
  // (slot, score) for every doc touched by the query, in slot order.
  std::vector<std::pair<std::size_t, double>> cosine(std::string_view query) const;

  Tokenizer tokenizer_;
  std::vector<DocId> doc_ids_;  // sorted; slot -> doc_id
  std::vector<double> norms_;   // by slot
  std::unordered_map<std::string, TermEntry> terms_;
};

// Sorts by score descending, then doc_id ascending.
// Scores closer than this rank as ties.
inline constexpr double kScoreResolution = 1e-9;
std::int64_t score_key(double score);

// Best first by score_key, ties by ascending doc_id.
void sort_ranked(std::vector<ScoredDoc>& docs);

}  // namespace kgmatch
