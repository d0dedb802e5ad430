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

#include "kgmatch/kg_store.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>

#include "kgmatch/error.hpp"
#include "kgmatch/io.hpp"
#include "kgmatch/text.hpp"

namespace kgmatch {
namespace {

constexpr std::array<std::string_view, 9> kDimensionNames = {
    "xWant", "xNeed", "xIntent", "xReact", "xEffect", "xAttr", "oWant", "oReact", "oEffect",
};

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

std::optional<double> parse_double(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

struct UriConcept {
  std::string language;
  std::string term;
};

// "/c/en/get_rid/v/wn/..." -> {en, get_rid}
std::optional<UriConcept> parse_concept_uri(std::string_view uri) {
  auto parts = split(uri, '/');
  if (parts.size() < 4 || !parts[0].empty() || parts[1] != "c" || parts[3].empty()) {
    return std::nullopt;
  }
  return UriConcept{parts[2], parts[3]};
}

// "/r/Antonym" -> "Antonym"
std::string parse_relation_uri(std::string_view uri) {
  if (uri.starts_with("/r/")) uri.remove_prefix(3);
  return std::string(uri);
}

std::size_t phrase_words(std::string_view lemma) {
  return static_cast<std::size_t>(std::count(lemma.begin(), lemma.end(), '_')) + 1;
}

}  // namespace

std::string_view to_string(Dimension d) { return kDimensionNames[static_cast<std::size_t>(d)]; }

std::optional<Dimension> parse_dimension(std::string_view s) {
  for (std::size_t i = 0; i < kDimensionNames.size(); ++i) {
    if (kDimensionNames[i] == s) return static_cast<Dimension>(i);
  }
  return std::nullopt;
}

Dimension dimension_from_string(std::string_view s) {
  auto d = parse_dimension(s);
  if (!d) throw DataError("unknown inference dimension '" + std::string(s) + "'");
  return *d;
}

bool is_agent_dimension(Dimension d) { return to_string(d).front() == 'x'; }

const EventInferencePair& PairCorpus::by_id(std::uint32_t pair_id) const {
  if (pair_id < pairs.size() && pairs[pair_id].pair_id == pair_id) return pairs[pair_id];
  auto it = std::find_if(pairs.begin(), pairs.end(),
                         [&](const auto& p) { return p.pair_id == pair_id; });
  if (it == pairs.end()) throw DataError("no pair with id " + std::to_string(pair_id));
  return *it;
}

PairCorpus parse_pair_corpus(std::istream& in, std::string source_name, LoadReport* report) {
  PairCorpus corpus;
  corpus.source_name = std::move(source_name);
  LoadReport local;
  LoadReport& r = report ? *report : local;
  r = LoadReport{};

  std::string line;
  while (std::getline(in, line)) {
    line = strip_cr(std::move(line));
    if (trim(line).empty()) continue;
    ++r.rows;
    auto fields = split(line, '\t');
    if (fields.size() != 3) {
      ++r.skipped;
      continue;
    }
    auto dim = parse_dimension(trim(fields[1]));
    auto event = normalize_whitespace(fields[0]);
    auto inference = normalize_whitespace(fields[2]);
    if (!dim || event.empty() || inference.empty()) {
      ++r.skipped;
      continue;
    }
    auto id = static_cast<std::uint32_t>(corpus.pairs.size());
    corpus.pairs.push_back({id, std::move(event), *dim, std::move(inference)});
  }
  if (r.rows == 0) r.warnings.push_back(corpus.source_name + ": empty corpus");
  if (r.skipped * 2 > r.rows) {
    throw DataError(corpus.source_name + ": " + std::to_string(r.skipped) + " of " +
                    std::to_string(r.rows) +
                    " rows skipped; expected event<TAB>dimension<TAB>inference");
  }
  if (r.skipped > 0) {
    r.warnings.push_back(corpus.source_name + ": skipped " + std::to_string(r.skipped) +
                         " rows");
  }
  return corpus;
}

PairCorpus load_pair_corpus(const std::filesystem::path& path, LoadReport* report) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read " + path.string());
  return parse_pair_corpus(in, path.filename().string(), report);
}

std::optional<EdgeFormat> parse_edge_format(std::string_view s) {
  if (s == "assertions-csv") return EdgeFormat::kAssertionsCsv;
  if (s == "edge-tsv") return EdgeFormat::kEdgeTsv;
  return std::nullopt;
}

std::optional<std::uint32_t> EdgeGraph::find(std::string_view lemma) const {
  auto it = by_lemma_.find(std::string(lemma));
  if (it == by_lemma_.end()) return std::nullopt;
  return it->second;
}

EdgeGraphBuilder::EdgeGraphBuilder(std::string source_name) {
  graph_.source_name_ = std::move(source_name);
}

std::uint32_t EdgeGraphBuilder::add_node(std::string_view lemma, std::string_view surface) {
  auto [it, inserted] =
      graph_.by_lemma_.try_emplace(std::string(lemma), static_cast<std::uint32_t>(graph_.nodes_.size()));
  if (inserted) {
    graph_.nodes_.push_back({it->second, std::string(lemma), std::string(surface)});
    graph_.out_.emplace_back();
    graph_.in_.emplace_back();
    graph_.max_phrase_words_ = std::max(graph_.max_phrase_words_, phrase_words(lemma));
  }
  return it->second;
}

void EdgeGraphBuilder::add_edge(std::uint32_t head, std::string_view relation,
                                std::uint32_t tail, double weight) {
  std::string key = std::to_string(head) + '\x1f' + std::string(relation) + '\x1f' +
                    std::to_string(tail);
  auto [it, inserted] =
      edge_index_.try_emplace(std::move(key), static_cast<std::uint32_t>(graph_.edges_.size()));
  if (!inserted) {
    auto& e = graph_.edges_[it->second];
    e.weight = std::max(e.weight, weight);
    return;
  }
  graph_.edges_.push_back({head, std::string(relation), tail, weight});
  graph_.out_[head].push_back(it->second);
  graph_.in_[tail].push_back(it->second);
}

EdgeGraph EdgeGraphBuilder::build() && { return std::move(graph_); }

std::string normalize_concept(std::string_view s) {
  std::string out;
  bool pending = false;
  for (char c : trim(s)) {
    if (c == ' ' || c == '\t' || c == '_') {
      pending = !out.empty();
      continue;
    }
    if (pending) out.push_back('_');
    pending = false;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

EdgeGraph parse_edge_graph(std::istream& in, EdgeFormat format, std::string source_name,
                           const EdgeLoadOptions& options, LoadReport* report) {
  LoadReport local;
  LoadReport& r = report ? *report : local;
  r = LoadReport{};
  EdgeGraphBuilder builder(source_name);

  std::string line;
  while (std::getline(in, line)) {
    line = strip_cr(std::move(line));
    if (trim(line).empty()) continue;
    ++r.rows;
    auto fields = split(line, '\t');
    std::string head_surface, tail_surface, relation;
    double weight = 1.0;

    if (format == EdgeFormat::kAssertionsCsv) {
      if (fields.size() < 4) {
        ++r.skipped;
        continue;
      }
      auto head = parse_concept_uri(fields[2]);
      auto tail = parse_concept_uri(fields[3]);
      if (!head || !tail || head->language != "en" || tail->language != "en") {
        ++r.skipped;
        continue;
      }
      relation = parse_relation_uri(fields[1]);
      head_surface = head->term;
      tail_surface = tail->term;
      if (fields.size() >= 5 && !trim(fields[4]).empty()) {
        auto meta = Json::parse(fields[4], nullptr, /*allow_exceptions=*/false);
        if (meta.is_object() && meta.contains("weight") && meta["weight"].is_number()) {
          weight = meta["weight"].get<double>();
        }
      }
    } else {
      if (fields.size() < 3 || fields.size() > 4) {
        ++r.skipped;
        continue;
      }
      head_surface = std::string(trim(fields[0]));
      relation = std::string(trim(fields[1]));
      tail_surface = std::string(trim(fields[2]));
      if (fields.size() == 4 && !trim(fields[3]).empty()) {
        auto w = parse_double(fields[3]);
        if (!w) {
          ++r.skipped;
          continue;
        }
        weight = *w;
      }
    }

    auto head_lemma = normalize_concept(head_surface);
    auto tail_lemma = normalize_concept(tail_surface);
    if (head_lemma.empty() || tail_lemma.empty() || relation.empty() || weight < 0 ||
        options.relation_blocklist.contains(relation)) {
      ++r.skipped;
      continue;
    }
    auto h = builder.add_node(head_lemma, head_surface);
    auto t = builder.add_node(tail_lemma, tail_surface);
    builder.add_edge(h, relation, t, weight);
  }
  if (builder.edge_count() == 0) {
    throw DataError(source_name + ": no edges after filtering (" + std::to_string(r.rows) +
                    " rows read)");
  }
  return std::move(builder).build();
}

EdgeGraph load_edge_graph(const std::filesystem::path& path, EdgeFormat format,
                          const EdgeLoadOptions& options, LoadReport* report) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read " + path.string());
  return parse_edge_graph(in, format, path.filename().string(), options, report);
}

void write_edge_tsv(std::ostream& out, const EdgeGraph& graph) {
  Json w;
  for (const auto& e : graph.edges()) {
    w = e.weight;
    out << graph.lemma(e.head) << '\t' << e.relation << '\t' << graph.lemma(e.tail) << '\t'
        << w.dump() << '\n';
  }
}

std::vector<std::uint32_t> lookup_concepts(const EdgeGraph& graph,
                                           std::span<const std::string> lemmas) {
  std::vector<std::uint32_t> out;
  for (const auto& l : lemmas) {
    if (auto id = graph.find(l)) out.push_back(*id);
  }
  return out;
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c != '"') {
        field.push_back(c);
      } else if (i + 1 < text.size() && text[i + 1] == '"') {
        field.push_back('"');
        ++i;
      } else {
        quoted = false;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (any || !field.empty()) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
      }
      row.clear();
      field.clear();
      any = false;
    } else {
      field.push_back(c);
    }
  }
  if (quoted) throw DataError("unterminated quoted CSV field");
  if (any || !field.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::map<std::string, std::vector<EventInferencePair>> convert_atomic_csv(
    std::string_view text, std::string_view name, std::string_view default_split) {
  const auto rows = parse_csv(text);
  if (rows.empty()) throw DataError(std::string(name) + ": empty CSV");
  const auto& header = rows.front();
  auto column = [&](std::string_view key) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (trim(header[i]) == key) return i;
    return std::nullopt;
  };
  const auto event_col = column("event");
  if (!event_col) throw DataError(std::string(name) + ": no 'event' column");
  const auto split_col = column("split");
  std::vector<std::pair<Dimension, std::size_t>> dims;
  for (auto d : kAllDimensions)
    if (auto c = column(to_string(d))) dims.emplace_back(d, *c);
  if (dims.empty()) throw DataError(std::string(name) + ": no dimension columns");

  std::map<std::string, std::vector<EventInferencePair>> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    auto where = [&] { return std::string(name) + ":row " + std::to_string(r + 1); };
    if (row.size() != header.size())
      throw DataError(where() + ": expected " + std::to_string(header.size()) + " fields");
    const auto event = normalize_whitespace(row[*event_col]);
    if (event.empty()) continue;
    std::string split(default_split);
    if (split_col && !trim(row[*split_col]).empty()) split = std::string(trim(row[*split_col]));
    auto& bucket = out[split];
    for (const auto& [dim, col] : dims) {
      Json list;
      try {
        list = Json::parse(row[col]);
      } catch (const Json::exception&) {
        throw DataError(where() + ": column " + std::string(to_string(dim)) + " is not a JSON list");
      }
      if (!list.is_array())
        throw DataError(where() + ": column " + std::string(to_string(dim)) + " is not a JSON list");
      for (const auto& item : list) {
        if (!item.is_string()) continue;
        auto inference = normalize_whitespace(item.get<std::string>());
        if (inference.empty()) continue;
        bucket.push_back({static_cast<std::uint32_t>(bucket.size()), event, dim, std::move(inference)});
      }
    }
  }
  return out;
}

void write_pair_tsv(std::ostream& out, std::span<const EventInferencePair> pairs) {
  for (const auto& p : pairs) out << p.event << '\t' << to_string(p.dimension) << '\t' << p.inference << '\n';
}

}  // namespace kgmatch
