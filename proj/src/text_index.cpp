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

#include "kgmatch/text_index.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>

#include "kgmatch/error.hpp"
#include "kgmatch/text.hpp"

namespace kgmatch {
namespace {

bool is_token_char(char c) {
  auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) != 0 || u >= 0x80;
}

// Order-independent sum: sorting first makes equal multisets of addends
// produce bit-identical totals, which keeps tie-breaking exact.
double stable_sum(std::vector<double>& values) {
  std::sort(values.begin(), values.end());
  double s = 0;
  for (double v : values) s += v;
  return s;
}

}  // namespace

Tokenizer::Tokenizer(std::unordered_set<std::string> stopwords)
    : stopwords_(std::move(stopwords)) {}

Tokenizer Tokenizer::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read stopword list " + path.string());
  std::unordered_set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    auto w = trim(line);
    if (w.empty() || w.front() == '#') continue;
    words.insert(to_lower(w));
  }
  return Tokenizer(std::move(words));
}

std::vector<std::string> Tokenizer::words(std::string_view text) const {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!is_token_char(text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && is_token_char(text[j])) ++j;
    out.push_back(to_lower(text.substr(i, j - i)));
    i = j;
  }
  return out;
}

std::vector<std::string> Tokenizer::tokenize(std::string_view text) const {
  auto all = words(text);
  std::erase_if(all, [&](const std::string& w) { return stopwords_.contains(w); });
  return all;
}

bool Tokenizer::is_stopword(std::string_view token) const {
  return stopwords_.contains(std::string(token));
}

TfIdfIndex::TfIdfIndex(std::vector<std::pair<DocId, std::string>> docs, Tokenizer tokenizer)
    : tokenizer_(std::move(tokenizer)) {
  std::sort(docs.begin(), docs.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < docs.size(); ++i) {
    if (docs[i].first == docs[i - 1].first) {
      throw UsageError("duplicate doc_id " + std::to_string(docs[i].first));
    }
  }
  doc_ids_.reserve(docs.size());
  std::vector<std::map<std::string, std::uint32_t>> counts(docs.size());
  for (std::size_t slot = 0; slot < docs.size(); ++slot) {
    doc_ids_.push_back(docs[slot].first);
    for (auto& t : tokenizer_.tokenize(docs[slot].second)) ++counts[slot][t];
  }
  for (std::size_t slot = 0; slot < counts.size(); ++slot) {
    for (const auto& [term, tf] : counts[slot]) {
      terms_[term].postings.push_back({doc_ids_[slot], tf});
    }
  }
  const double n = static_cast<double>(docs.size());
  for (auto& [term, entry] : terms_) {
    entry.idf = std::log(n / (1.0 + static_cast<double>(entry.postings.size()))) + 1.0;
  }
  norms_.assign(docs.size(), 0.0);
  for (std::size_t slot = 0; slot < counts.size(); ++slot) {
    std::vector<double> squares;
    squares.reserve(counts[slot].size());
    for (const auto& [term, tf] : counts[slot]) {
      double w = tf * terms_.at(term).idf;
      squares.push_back(w * w);
    }
    norms_[slot] = std::sqrt(stable_sum(squares));
  }
}

std::size_t TfIdfIndex::slot_of(DocId doc_id) const {
  auto it = std::lower_bound(doc_ids_.begin(), doc_ids_.end(), doc_id);
  if (it == doc_ids_.end() || *it != doc_id) {
    throw UsageError("unknown doc_id " + std::to_string(doc_id));
  }
  return static_cast<std::size_t>(it - doc_ids_.begin());
}

std::span<const Posting> TfIdfIndex::postings(std::string_view term) const {
  auto it = terms_.find(std::string(term));
  if (it == terms_.end()) return {};
  return it->second.postings;
}

double TfIdfIndex::idf(std::string_view term) const {
  auto it = terms_.find(std::string(term));
  if (it != terms_.end()) return it->second.idf;
  return std::log(static_cast<double>(doc_count()) / 1.0) + 1.0;
}

double TfIdfIndex::doc_norm(DocId doc_id) const { return norms_[slot_of(doc_id)]; }

std::vector<TfIdfIndex::QueryTerm> TfIdfIndex::query_vector(std::string_view query,
                                                            double* norm) const {
  std::map<std::string, std::uint32_t> tf;
  for (auto& t : tokenizer_.tokenize(query)) ++tf[t];
  std::vector<QueryTerm> out;
  std::vector<double> squares;
  for (const auto& [term, count] : tf) {
    auto it = terms_.find(term);
    if (it == terms_.end()) continue;
    double w = count * it->second.idf;
    out.push_back({&it->second, w});
    squares.push_back(w * w);
  }
  *norm = std::sqrt(stable_sum(squares));
  return out;
}

std::vector<std::pair<std::size_t, double>> TfIdfIndex::cosine(std::string_view query) const {
  double qnorm = 0;
  auto qv = query_vector(query, &qnorm);
  std::vector<std::pair<std::size_t, double>> out;
  if (qnorm == 0) return out;

  // k-way merge over the query terms' posting lists (each sorted by doc_id).
  std::vector<std::size_t> cursor(qv.size(), 0);
  std::vector<double> group;
  while (true) {
    DocId next = 0;
    bool any = false;
    for (std::size_t t = 0; t < qv.size(); ++t) {
      const auto& list = qv[t].entry->postings;
      if (cursor[t] < list.size() && (!any || list[cursor[t]].doc_id < next)) {
        next = list[cursor[t]].doc_id;
        any = true;
      }
    }
    if (!any) break;
    group.clear();
    for (std::size_t t = 0; t < qv.size(); ++t) {
      const auto& list = qv[t].entry->postings;
      if (cursor[t] < list.size() && list[cursor[t]].doc_id == next) {
        group.push_back(qv[t].weight * (list[cursor[t]].tf * qv[t].entry->idf));
        ++cursor[t];
      }
    }
    std::size_t slot = slot_of(next);
    if (norms_[slot] == 0) continue;
    double score = stable_sum(group) / (qnorm * norms_[slot]);
    out.emplace_back(slot, std::clamp(score, 0.0, 1.0));
  }
  return out;
}

std::int64_t score_key(double score) { return std::llround(score / kScoreResolution); }

void sort_ranked(std::vector<ScoredDoc>& docs) {
  std::sort(docs.begin(), docs.end(), [](const ScoredDoc& a, const ScoredDoc& b) {
    const auto ka = score_key(a.score), kb = score_key(b.score);
    if (ka != kb) return ka > kb;
    return a.doc_id < b.doc_id;
  });
}

std::vector<ScoredDoc> TfIdfIndex::score_top_k(std::string_view query, std::size_t k) const {
  if (k == 0) throw UsageError("k must be positive");
  std::vector<ScoredDoc> ranked;
  for (const auto& [slot, score] : cosine(query)) {
    if (score > 0) ranked.push_back({doc_ids_[slot], score});
  }
  sort_ranked(ranked);
  if (ranked.size() > k) ranked.resize(k);
  return ranked;
}

std::vector<ScoredDoc> TfIdfIndex::score_subset(std::string_view query,
                                                std::span<const DocId> candidates) const {
  double qnorm = 0;
  auto qv = query_vector(query, &qnorm);
  std::vector<ScoredDoc> out;
  out.reserve(candidates.size());
  std::vector<double> group;
  for (DocId id : candidates) {
    std::size_t slot = slot_of(id);
    double score = 0;
    if (qnorm > 0 && norms_[slot] > 0) {
      group.clear();
      for (const auto& q : qv) {
        const auto& list = q.entry->postings;
        auto it = std::lower_bound(list.begin(), list.end(), id,
                                   [](const Posting& p, DocId d) { return p.doc_id < d; });
        if (it != list.end() && it->doc_id == id) {
          group.push_back(q.weight * (it->tf * q.entry->idf));
        }
      }
      if (!group.empty()) {
        score = std::clamp(stable_sum(group) / (qnorm * norms_[slot]), 0.0, 1.0);
      }
    }
    out.push_back({id, score});
  }
  sort_ranked(out);
  return out;
}

}  // namespace kgmatch
