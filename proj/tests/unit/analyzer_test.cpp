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


#include "doctest.h"
#include "kgmatch/analyzer.hpp"
#include "kgmatch/error.hpp"
#include "support.hpp"

using namespace kgmatch;
using namespace kgmatch::testing;

namespace {

PredictionRecord pred(const std::string& id, std::vector<double> p, int idx) {
  return PredictionRecord{id, "m", std::move(p), idx};
}

SubsetSplit split_of(const ExtractionConfig& c, int slots, const std::vector<int>& tags) {
  std::vector<ExtractionResult> rs;
  for (std::size_t i = 0; i < tags.size(); ++i) {
    ExtractionResult r;
    r.instance_id = "i" + std::to_string(i);
    r.config = c;
    for (int s = 0; s < slots; ++s) {
      if (s < tags[i]) r.per_candidate.push_back(make_item(Triple{"a", "IsA", "b", 1}, 1, {}));
      else r.per_candidate.emplace_back();
    }
    rs.push_back(r);
  }
  return split_subsets(rs);
}

}  // namespace

TEST_CASE("prediction validation") {
  CHECK_NOTHROW(pred("a", {0.25, 0.75}, 1).validate());
  CHECK_NOTHROW(pred("a", {0.5, 0.5}, 0).validate());
  CHECK_THROWS_AS(pred("a", {0.5, 0.5}, 1).validate(), DataError);
  CHECK_THROWS_AS(pred("a", {0.6, 0.6}, 0).validate(), DataError);
  CHECK_THROWS_AS(pred("a", {1.5, -0.5}, 0).validate(), DataError);
  CHECK_THROWS_AS(pred("a", {1.0}, 0).validate(), DataError);
  CHECK_THROWS_AS(pred("a", {0.25, 0.25, 0.25, 0.25}, 0).validate(), DataError);
  CHECK_NOTHROW(pred("a", {0.2, 0.3, 0.5 + 5e-7}, 2).validate());
  const auto p = pred("x", {0.125, 0.875}, 1);
  CHECK(prediction_from_json(to_json(p)) == p);
  CHECK(argmax(std::vector<double>{0.2, 0.4, 0.4}) == 1);
}

TEST_CASE("accuracy") {
  const std::vector<PredictionRecord> log = {pred("a", {0.25, 0.75}, 1), pred("b", {0.75, 0.25}, 0),
                                             pred("c", {0.5, 0.5}, 0), pred("d", {0.1, 0.9}, 1)};
  CHECK(accuracy(log, {{"a", 1}, {"b", 1}, {"c", 0}, {"d", 1}}) == 0.75);
  CHECK_THROWS_AS(accuracy(log, {{"a", 1}}), DataError);
  CHECK_THROWS_AS(accuracy({}, {}), DataError);
}

TEST_CASE("delta analysis rejects unpaired logs") {
  const std::vector<PredictionRecord> a = {pred("a", {0.5, 0.5}, 0)};
  const std::vector<PredictionRecord> b = {pred("b", {0.5, 0.5}, 0)};
  CHECK_THROWS_AS(delta_analysis(a, b, {{"a", 0}, {"b", 0}}), DataError);
  CHECK_THROWS_AS(delta_analysis(a, {}, {{"a", 0}}), DataError);
  const auto r = delta_analysis(a, a, {{"a", 0}});
  CHECK(r.by_kind.at(ChangeKind::kUnchangedCorrect).count == 1);
  CHECK_FALSE(r.by_kind.at(ChangeKind::kBecameCorrect).mean_delta);
}

TEST_CASE("rounded percentages are half-up integers") {
  CHECK(rounded_percent(1, 8) == 13);
  CHECK(rounded_percent(3, 8) == 38);
  CHECK(rounded_percent(1, 3) == 33);
  CHECK(rounded_percent(2, 3) == 67);
  CHECK(rounded_percent(1, 200) == 1);
  CHECK(rounded_percent(0, 5) == 0);
  CHECK(rounded_percent(0, 0) == 0);
  CHECK(rounded_percent(7, 7) == 100);
}

TEST_CASE("coverage totals come from counts, not from rounded cells") {
  ExtractionConfig c;
  const std::vector<std::pair<std::string, SubsetSplit>> s = {{"eight", split_of(c, 3, {1, 2, 2, 2, 0, 3, 3, 3})}};
  const auto t = coverage_report(s);
  REQUIRE(t.rows.size() == 4);
  CHECK(t.rows[0].percents[0] == 13);
  CHECK(t.rows[1].percents[0] == 38);
  CHECK(t.rows[2].percents[0] == 38);
  CHECK(t.rows[3].label == "QC-HQ CS");
  CHECK(t.rows[3].counts[0] == 7u);
  CHECK(t.rows[3].percents[0] == 88);
  CHECK(t.dataset_sizes == std::vector<std::size_t>{8});
}

TEST_CASE("coverage shares rows between columns with the same label") {
  ExtractionConfig c;
  const std::vector<std::pair<std::string, SubsetSplit>> s = {{"three", split_of(c, 3, {3, 1, 0, 3})},
                                                              {"two", split_of(c, 2, {2, 2, 1, 0})}};
  const auto t = coverage_report(s);
  REQUIRE(t.rows.size() == 4);
  CHECK(t.rows[2].label == "QC-HQ CS-3");
  CHECK(t.rows[2].percents == std::vector<std::optional<int>>{50, 0});
  CHECK(t.rows[3].percents == std::vector<std::optional<int>>{75, 75});
}

TEST_CASE("learning-curve summary") {
  const std::vector<CurvePoint> curve = {{0.01, 0.5}, {0.1, 0.75}, {1.0, 0.25}};
  const auto m = curve_metrics(curve);
  CHECK(m.max == 0.75);
  CHECK(m.ws == doctest::Approx((0.5 + 0.75 / 2 + 0.25 / 3) / (1 + 0.5 + 1.0 / 3)));
  const std::vector<CurvePoint> flat = {{1, 0.6}};
  CHECK(curve_metrics(flat).ws == doctest::Approx(0.6));
  CHECK_THROWS_AS(curve_metrics({}), UsageError);
  TempDir dir("curve");
  write_file(dir / "c.json", R"({"points": [{"x": 1.0, "accuracy": 0.25}, {"x": 0.1, "accuracy": 0.5}]})");
  const auto loaded = load_curve(dir / "c.json");
  REQUIRE(loaded.size() == 2);
  CHECK(loaded[0].x == 0.1);
}

TEST_CASE("probe scoring reports the majority baseline") {
  const std::vector<PredictionRecord> log = {pred("p1", {0.75, 0.25}, 0), pred("p2", {0.75, 0.25}, 0),
                                             pred("p3", {0.25, 0.75}, 1), pred("p4", {0.75, 0.25}, 0)};
  const auto s = score_probes(log, {{"p1", 0}, {"p2", 0}, {"p3", 0}, {"p4", 1}});
  CHECK(s.count == 4);
  CHECK(s.accuracy == 0.5);
  CHECK(s.majority == 0.75);
}

TEST_CASE("table formatting") {
  const auto t = format_table({"A", "Count"}, {{"x", "1"}, {"longer", "22"}});
  CHECK(t.find("longer") != std::string::npos);
  CHECK(t.find("Count") < t.find("longer"));
}
