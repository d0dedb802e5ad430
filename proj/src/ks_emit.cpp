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

#include "kgmatch/ks_emit.hpp"

#include <unordered_map>
#include <unordered_set>

#include "kgmatch/error.hpp"

namespace kgmatch {
namespace {

std::vector<AugmentedInstance> emit_split(std::span<const TaskInstance> tasks,
                                          std::span<const ExtractionResult> results,
                                          const SubsetTag& subset, bool with_knowledge,
                                          std::string_view split) {
  std::unordered_map<std::string_view, const ExtractionResult*> by_id;
  for (const auto& r : results) {
    if (!by_id.emplace(r.instance_id, &r).second)
      throw DataError(std::string(split) + ": extraction lists " + r.instance_id + " twice");
  }
  std::unordered_set<std::string_view> task_ids;
  for (const auto& t : tasks) task_ids.insert(t.instance_id);
  for (const auto& r : results) {
    if (!task_ids.count(r.instance_id))
      throw DataError(std::string(split) + ": extraction result " + r.instance_id +
                      " matches no task instance");
  }
  std::vector<AugmentedInstance> out;
  for (const auto& t : tasks) {
    auto it = by_id.find(t.instance_id);
    if (it == by_id.end())
      throw DataError(std::string(split) + ": no extraction result for " + t.instance_id);
    const auto& r = *it->second;
    if (r.per_candidate.size() != t.candidates.size())
      throw DataError(std::string(split) + ": " + t.instance_id +
                      " has a different candidate count in the extraction");
    if (r.subset_tag() != subset) continue;
    out.push_back(augment(t, r, with_knowledge));
  }
  if (out.empty())
    throw DataError(std::string(split) + ": subset " + subset.str() + " is empty");
  return out;
}

}  // namespace

std::string_view to_string(EvalVariant v) { return v == EvalVariant::kKSPlus ? "KS+" : "KS-"; }

std::optional<EvalVariant> parse_eval_variant(std::string_view s) {
  if (s == "KS+" || s == "ks+" || s == "plus") return EvalVariant::kKSPlus;
  if (s == "KS-" || s == "ks-" || s == "minus") return EvalVariant::kKSMinus;
  return std::nullopt;
}

void EmissionPlan::validate() const {
  if (subset.knowledge_count <= 0) throw UsageError("emission subset must be CS-1 or higher");
}

Json to_json(const EmissionPlan& p) {
  return Json{{"subset", p.subset.str()}, {"eval", to_string(p.eval)}, {"baseline", p.baseline}};
}

std::vector<bool> AugmentedInstance::knowledge_present() const {
  std::vector<bool> out;
  for (const auto& k : knowledge) out.push_back(k.has_value());
  return out;
}

Json to_json(const AugmentedInstance& a) {
  Json knowledge = Json::array();
  for (const auto& k : a.knowledge) knowledge.push_back(k ? Json(*k) : Json());
  return Json{{"instance_id", a.instance_id}, {"question", a.question},
              {"candidates", a.candidates},   {"gold_index", a.gold_index},
              {"subset_tag", a.subset_tag.str()}, {"knowledge", std::move(knowledge)}};
}

AugmentedInstance augmented_from_json(const Json& j) {
  AugmentedInstance a;
  try {
    a.instance_id = j.at("instance_id").get<std::string>();
    a.question = j.at("question").get<std::string>();
    a.candidates = j.at("candidates").get<std::vector<std::string>>();
    a.gold_index = j.at("gold_index").get<int>();
    auto tag = SubsetTag::parse(j.at("subset_tag").get<std::string>());
    if (!tag) throw DataError("bad subset_tag");
    a.subset_tag = *tag;
    for (const auto& k : j.at("knowledge")) {
      if (k.is_null()) a.knowledge.emplace_back();
      else a.knowledge.emplace_back(k.get<std::string>());
    }
  } catch (const Json::exception& e) {
    throw DataError(std::string("bad dataset record: ") + e.what());
  }
  if (a.knowledge.size() != a.candidates.size())
    throw DataError(a.instance_id + ": knowledge and candidates differ in length");
  if (a.gold_index < 0 || a.gold_index >= static_cast<int>(a.candidates.size()))
    throw DataError(a.instance_id + ": gold_index out of range");
  for (std::size_t i = 0; i < a.candidates.size(); ++i) {
    if (!a.knowledge[i]) continue;
    const auto& c = a.candidates[i];
    const auto suffix = " " + *a.knowledge[i];
    if (c.size() <= suffix.size() || c.compare(c.size() - suffix.size(), suffix.size(), suffix) != 0)
      throw DataError(a.instance_id + ": candidate " + std::to_string(i) +
                      " does not end with its knowledge");
  }
  return a;
}

std::vector<AugmentedInstance> load_augmented(const std::filesystem::path& path) {
  std::vector<AugmentedInstance> out;
  for_each_jsonl(path, [&](const Json& j, std::size_t line) {
    try {
      out.push_back(augmented_from_json(j));
    } catch (const DataError& e) {
      throw DataError(path.string() + ":" + std::to_string(line) + ": " + e.what());
    }
  });
  return out;
}

AugmentedInstance augment(const TaskInstance& task, const ExtractionResult& result,
                          bool with_knowledge) {
  AugmentedInstance a;
  a.instance_id = task.instance_id;
  a.question = task.question;
  a.gold_index = task.gold_index;
  a.subset_tag = result.subset_tag();
  for (std::size_t i = 0; i < task.candidates.size(); ++i) {
    const auto& k = result.per_candidate.at(i);
    if (with_knowledge && k) {
      a.candidates.push_back(task.candidates[i] + " " + k->rendered);
      a.knowledge.emplace_back(k->rendered);
    } else {
      a.candidates.push_back(task.candidates[i]);
      a.knowledge.emplace_back();
    }
  }
  return a;
}

EmittedDataset emit_dataset(std::span<const TaskInstance> train_tasks,
                            std::span<const ExtractionResult> train_results,
                            std::span<const TaskInstance> dev_tasks,
                            std::span<const ExtractionResult> dev_results, const EmissionPlan& plan) {
  plan.validate();
  const bool train_knowledge = !plan.baseline;
  const bool dev_knowledge = !plan.baseline && plan.eval == EvalVariant::kKSPlus;
  return EmittedDataset{
      emit_split(train_tasks, train_results, plan.subset, train_knowledge, "train"),
      emit_split(dev_tasks, dev_results, plan.subset, dev_knowledge, "dev")};
}

}  // namespace kgmatch
