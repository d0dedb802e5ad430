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
#include <span>
#include <string>
#include <vector>

#include "kgmatch/extractor.hpp"
#include "kgmatch/io.hpp"

namespace kgmatch {

enum class EvalVariant { kKSPlus, kKSMinus };

std::string_view to_string(EvalVariant v);  // "KS+" / "KS-"
std::optional<EvalVariant> parse_eval_variant(std::string_view s);

struct EmissionPlan {
  SubsetTag subset{3};
  EvalVariant eval = EvalVariant::kKSPlus;
  bool baseline = false;

  // Throws UsageError for CS-0, which never forms an experiment subset.
  void validate() const;
};

Json to_json(const EmissionPlan& p);

struct AugmentedInstance {
  std::string instance_id;
  std::string question;
  std::vector<std::string> candidates;  // "candidate knowledge" or bare
  int gold_index = 0;
  SubsetTag subset_tag;
  std::vector<std::optional<std::string>> knowledge;  // rendered text per slot

  std::vector<bool> knowledge_present() const;
  friend bool operator==(const AugmentedInstance&, const AugmentedInstance&) = default;
};

Json to_json(const AugmentedInstance& a);
// Checks that each present knowledge slot is what its candidate ends with.
AugmentedInstance augmented_from_json(const Json& j);
std::vector<AugmentedInstance> load_augmented(const std::filesystem::path& path);

// Candidates carry their knowledge when `with_knowledge` is set.
AugmentedInstance augment(const TaskInstance& task, const ExtractionResult& result,
                          bool with_knowledge);

struct EmittedDataset {
  std::vector<AugmentedInstance> train;
  std::vector<AugmentedInstance> dev;
};

// Restricts both splits to the plan's subset, in task order. Throws
// DataError when a split's subset is empty, when an instance lacks its
// extraction result (or the reverse), or when candidate counts disagree.
EmittedDataset emit_dataset(std::span<const TaskInstance> train_tasks,
                            std::span<const ExtractionResult> train_results,
                            std::span<const TaskInstance> dev_tasks,
                            std::span<const ExtractionResult> dev_results, const EmissionPlan& plan);

}  // namespace kgmatch
