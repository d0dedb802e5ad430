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

#include <optional>
#include <string_view>
#include <utility>

namespace kgmatch::testing {

// Published dev-split sizes of the relational and agent-patient probe sets,
// plus the concept sets (reported, never asserted).
inline constexpr std::pair<std::string_view, double> kReferenceProbeSizes[] = {
    {"xWant vs xEffect", 10012}, {"xWant vs xReact", 10693},  {"xWant vs xIntent", 9790},
    {"xWant vs xNeed", 9829},    {"xWant vs xAttr", 11730},   {"xEffect vs xReact", 9519},
    {"xEffect vs xIntent", 8616}, {"xEffect vs xNeed", 8655}, {"xEffect vs xAttr", 10556},
    {"xReact vs xIntent", 9297}, {"xReact vs xNeed", 9336},   {"xReact vs xAttr", 11237},
    {"xIntent vs xNeed", 8433},  {"xIntent vs xAttr", 10334}, {"xNeed vs xAttr", 10334},
    {"oWant vs oEffect", 3873},  {"oWant vs oReact", 3873},   {"oEffect vs oReact", 3685},
    {"xWant vs oWant", 7974},    {"xEffect vs oEffect", 5911}, {"xReact vs oReact", 7293},
    {"inference", 8401},         {"event", 13228},
};

inline std::optional<double> reference_probe_size(std::string_view name) {
  for (const auto& [n, v] : kReferenceProbeSizes)
    if (n == name) return v;
  return std::nullopt;
}

}  // namespace kgmatch::testing
