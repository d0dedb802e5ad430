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

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kgmatch/extractor.hpp"
#include "kgmatch/io.hpp"

namespace kgmatch {

inline constexpr double kProbabilityTolerance = 1e-6;

struct PredictionRecord {
  std::string instance_id;
  std::string model_tag;
  std::vector<double> probabilities;
  int predicted_index = 0;

  // Throws DataError unless 2-3 non-negative probabilities sum to 1 and
  // predicted_index is their argmax (lowest index on ties).
  void validate() const;
  friend bool operator==(const PredictionRecord&, const PredictionRecord&) = default;
};

// Lowest index among the maxima.
int argmax(std::span<const double> p);

PredictionRecord prediction_from_json(const Json& j);
Json to_json(const PredictionRecord& r);
// Repeated ids are data errors.
std::vector<PredictionRecord> load_predictions(const std::filesystem::path& path);

using GoldMap = std::unordered_map<std::string, int>;

// Reads gold_index keyed by instance_id (or probe_id) from any
// line-delimited task, dataset or probe file.
GoldMap load_gold(const std::filesystem::path& path);

// Throws DataError for an empty log or an id without gold.
double accuracy(std::span<const PredictionRecord> log, const GoldMap& gold);

enum class ChangeKind { kBecameCorrect, kBecameIncorrect, kUnchangedCorrect, kUnchangedIncorrect };
inline constexpr std::array<ChangeKind, 4> kAllChangeKinds = {
    ChangeKind::kBecameCorrect, ChangeKind::kBecameIncorrect, ChangeKind::kUnchangedCorrect,
    ChangeKind::kUnchangedIncorrect};
std::string_view to_string(ChangeKind k);

struct DistributionDelta {
  std::string instance_id;
  int selected = 0;  // the KS model's prediction
  double delta = 0;  // p_ks[selected] - p_base[selected]
  ChangeKind change_kind = ChangeKind::kUnchangedCorrect;
};

struct KindSummary {
  std::size_t count = 0;
  std::optional<double> mean_delta;
};

struct DeltaReport {
  std::vector<DistributionDelta> records;  // KS log order
  std::map<ChangeKind, KindSummary> by_kind;
};

// A record whose prediction changed is became_correct when the KS model is
// right and became_incorrect otherwise. Throws DataError when the logs
// cover different ids or disagree on a record's candidate count.
DeltaReport delta_analysis(std::span<const PredictionRecord> base, std::span<const PredictionRecord> ks,
                           const GoldMap& gold);

struct CoverageRow {
  std::string label;  // "QC-HQ CS-1", "QC-HQ CS"
  std::vector<std::optional<std::size_t>> counts;
  std::vector<std::optional<int>> percents;
};

struct CoverageTable {
  std::vector<std::string> columns;
  std::vector<std::size_t> dataset_sizes;
  std::vector<CoverageRow> rows;
};

// Rounds 100 * count / size half up; a zero-size dataset gives 0.
int rounded_percent(std::size_t count, std::size_t size);

// Rows CS-1..CS-n then the CS total for each configuration label, one
// column per named split. Totals are rounded from summed counts.
CoverageTable coverage_report(const std::vector<std::pair<std::string, SubsetSplit>>& splits);

struct CurvePoint {
  double x = 0;  // training fraction or step
  double accuracy = 0;
};

struct CurveMetrics {
  double max = 0;
  double ws = 0;
};

// WS weights the i-th point (1-based, in the given order) by 1/i. Throws
// UsageError on an empty curve.
CurveMetrics curve_metrics(std::span<const CurvePoint> curve);

// {"points": [{"x": ..., "accuracy": ...}, ...]} sorted by x on load.
std::vector<CurvePoint> load_curve(const std::filesystem::path& path);

struct ProbeScore {
  std::size_t count = 0;
  double accuracy = 0;
  double majority = 0;  // share of the larger gold class
};

ProbeScore score_probes(std::span<const PredictionRecord> log, const GoldMap& gold);

// Plain-text rendering of a table with left-aligned first column.
std::string format_table(const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows);

}  // namespace kgmatch
