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

#include "kgmatch/analyzer.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <fmt/format.h>

#include "kgmatch/error.hpp"

namespace kgmatch {

int argmax(std::span<const double> p) {
  int best = 0;
  for (std::size_t i = 1; i < p.size(); ++i)
    if (p[i] > p[static_cast<std::size_t>(best)]) best = static_cast<int>(i);
  return best;
}

void PredictionRecord::validate() const {
  if (probabilities.size() < 2 || probabilities.size() > 3)
    throw DataError(fmt::format("{}: expected 2 or 3 probabilities, found {}", instance_id,
                                probabilities.size()));
  double sum = 0;
  for (double p : probabilities) {
    if (!(p >= 0) || !std::isfinite(p))
      throw DataError(fmt::format("{}: negative or non-finite probability", instance_id));
    sum += p;
  }
  if (std::fabs(sum - 1.0) > kProbabilityTolerance)
    throw DataError(fmt::format("{}: probabilities sum to {}", instance_id, sum));
  if (predicted_index != argmax(probabilities))
    throw DataError(fmt::format("{}: predicted_index {} is not the argmax", instance_id, predicted_index));
}

PredictionRecord prediction_from_json(const Json& j) {
  PredictionRecord r;
  try {
    r.instance_id = j.at("instance_id").get<std::string>();
    r.model_tag = j.at("model_tag").get<std::string>();
    r.probabilities = j.at("probabilities").get<std::vector<double>>();
    r.predicted_index = j.at("predicted_index").get<int>();
  } catch (const Json::exception& e) {
    throw DataError(std::string("bad prediction record: ") + e.what());
  }
  r.validate();
  return r;
}

Json to_json(const PredictionRecord& r) {
  return Json{{"instance_id", r.instance_id},
              {"model_tag", r.model_tag},
              {"probabilities", r.probabilities},
              {"predicted_index", r.predicted_index}};
}

std::vector<PredictionRecord> load_predictions(const std::filesystem::path& path) {
  std::vector<PredictionRecord> out;
  std::set<std::string> seen;
  for_each_jsonl(path, [&](const Json& j, std::size_t line) {
    try {
      out.push_back(prediction_from_json(j));
    } catch (const DataError& e) {
      throw DataError(fmt::format("{}:{}: {}", path.string(), line, e.what()));
    }
    if (!seen.insert(out.back().instance_id).second)
      throw DataError(fmt::format("{}:{}: duplicate instance_id {}", path.string(), line,
                                  out.back().instance_id));
  });
  return out;
}

GoldMap load_gold(const std::filesystem::path& path) {
  GoldMap out;
  for_each_jsonl(path, [&](const Json& j, std::size_t line) {
    const char* key = j.contains("instance_id") ? "instance_id" : "probe_id";
    try {
      const auto& id = j.at(key);
      out[id.is_string() ? id.get<std::string>() : id.dump()] = j.at("gold_index").get<int>();
    } catch (const Json::exception& e) {
      throw DataError(fmt::format("{}:{}: {}", path.string(), line, e.what()));
    }
  });
  return out;
}

double accuracy(std::span<const PredictionRecord> log, const GoldMap& gold) {
  if (log.empty()) throw DataError("empty prediction log");
  std::size_t correct = 0;
  for (const auto& r : log) {
    auto it = gold.find(r.instance_id);
    if (it == gold.end()) throw DataError("no gold answer for " + r.instance_id);
    if (r.predicted_index == it->second) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(log.size());
}

std::string_view to_string(ChangeKind k) {
  switch (k) {
    case ChangeKind::kBecameCorrect: return "became_correct";
    case ChangeKind::kBecameIncorrect: return "became_incorrect";
    case ChangeKind::kUnchangedCorrect: return "unchanged_correct";
    case ChangeKind::kUnchangedIncorrect: return "unchanged_incorrect";
  }
  return "";
}

DeltaReport delta_analysis(std::span<const PredictionRecord> base, std::span<const PredictionRecord> ks,
                           const GoldMap& gold) {
  std::unordered_map<std::string_view, const PredictionRecord*> base_by_id;
  for (const auto& r : base) base_by_id.emplace(r.instance_id, &r);
  if (base_by_id.size() != ks.size())
    throw DataError(fmt::format("logs cover different instances ({} baseline, {} KS)", base_by_id.size(),
                                ks.size()));
  DeltaReport report;
  std::map<ChangeKind, double> sums;
  for (auto k : kAllChangeKinds) report.by_kind[k] = {};
  for (const auto& r : ks) {
    auto it = base_by_id.find(r.instance_id);
    if (it == base_by_id.end()) throw DataError("baseline log lacks " + r.instance_id);
    const auto& b = *it->second;
    if (b.probabilities.size() != r.probabilities.size())
      throw DataError(r.instance_id + ": logs disagree on the candidate count");
    auto g = gold.find(r.instance_id);
    if (g == gold.end()) throw DataError("no gold answer for " + r.instance_id);
    const bool correct = r.predicted_index == g->second;
    ChangeKind kind;
    if (r.predicted_index != b.predicted_index)
      kind = correct ? ChangeKind::kBecameCorrect : ChangeKind::kBecameIncorrect;
    else
      kind = correct ? ChangeKind::kUnchangedCorrect : ChangeKind::kUnchangedIncorrect;
    const auto sel = static_cast<std::size_t>(r.predicted_index);
    const double delta = r.probabilities[sel] - b.probabilities[sel];
    report.records.push_back({r.instance_id, r.predicted_index, delta, kind});
    ++report.by_kind[kind].count;
    sums[kind] += delta;
  }
  for (auto& [kind, s] : report.by_kind)
    if (s.count) s.mean_delta = sums[kind] / static_cast<double>(s.count);
  return report;
}

int rounded_percent(std::size_t count, std::size_t size) {
  if (size == 0) return 0;
  return static_cast<int>((200 * count + size) / (2 * size));
}

CoverageTable coverage_report(const std::vector<std::pair<std::string, SubsetSplit>>& splits) {
  CoverageTable t;
  const std::size_t n = splits.size();
  // Labels in first-seen order, each with the widest candidate count seen.
  std::vector<std::pair<std::string, int>> labels;
  for (const auto& [name, split] : splits) {
    t.columns.push_back(name);
    t.dataset_sizes.push_back(split.dataset_size);
    const auto label = split.config.label();
    auto it = std::find_if(labels.begin(), labels.end(), [&](const auto& l) { return l.first == label; });
    if (it == labels.end()) labels.emplace_back(label, split.max_candidates);
    else it->second = std::max(it->second, split.max_candidates);
  }
  for (const auto& [label, widest] : labels) {
    for (int m = 1; m <= widest + 1; ++m) {
      const bool total_row = m == widest + 1;
      CoverageRow row;
      row.label = total_row ? label + " CS" : fmt::format("{} CS-{}", label, m);
      for (std::size_t c = 0; c < n; ++c) {
        const auto& split = splits[c].second;
        if (split.config.label() != label) {
          row.counts.emplace_back();
          row.percents.emplace_back();
          continue;
        }
        std::size_t count = 0;
        if (total_row) {
          for (int k = 1; k <= split.max_candidates; ++k) count += split.count(k);
        } else {
          count = split.count(m);
        }
        row.counts.emplace_back(count);
        row.percents.emplace_back(rounded_percent(count, split.dataset_size));
      }
      t.rows.push_back(std::move(row));
    }
  }
  return t;
}

CurveMetrics curve_metrics(std::span<const CurvePoint> curve) {
  if (curve.empty()) throw UsageError("learning curve has no points");
  CurveMetrics m;
  m.max = curve.front().accuracy;
  double num = 0;
  double den = 0;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const double w = 1.0 / static_cast<double>(i + 1);
    num += w * curve[i].accuracy;
    den += w;
    m.max = std::max(m.max, curve[i].accuracy);
  }
  m.ws = std::min(num / den, m.max);
  return m;
}

std::vector<CurvePoint> load_curve(const std::filesystem::path& path) {
  std::vector<CurvePoint> out;
  try {
    const auto doc = Json::parse(read_file(path));
    for (const auto& p : doc.at("points"))
      out.push_back({p.at("x").get<double>(), p.at("accuracy").get<double>()});
  } catch (const Json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  std::stable_sort(out.begin(), out.end(), [](const CurvePoint& a, const CurvePoint& b) { return a.x < b.x; });
  return out;
}

ProbeScore score_probes(std::span<const PredictionRecord> log, const GoldMap& gold) {
  ProbeScore s;
  s.accuracy = accuracy(log, gold);
  s.count = log.size();
  std::map<int, std::size_t> classes;
  for (const auto& r : log) ++classes[gold.at(r.instance_id)];
  std::size_t top = 0;
  for (const auto& [g, c] : classes) top = std::max(top, c);
  s.majority = static_cast<double>(top) / static_cast<double>(log.size());
  return s;
}

std::string format_table(const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size(), 0);
  auto widen = [&](const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size() && i < width.size(); ++i) width[i] = std::max(width[i], r[i].size());
  };
  widen(header);
  for (const auto& r : rows) widen(r);
  auto line = [&](const std::vector<std::string>& r) {
    std::string out;
    for (std::size_t i = 0; i < width.size(); ++i) {
      const std::string cell = i < r.size() ? r[i] : "";
      if (i == 0) out += fmt::format("{:<{}}", cell, width[i]);
      else out += fmt::format("  {:>{}}", cell, width[i]);
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    return out + "\n";
  };
  std::string out = line(header);
  std::size_t total = 0;
  for (auto w : width) total += w + 2;
  out += std::string(total - 2, '-') + "\n";
  for (const auto& r : rows) out += line(r);
  return out;
}

}  // namespace kgmatch
