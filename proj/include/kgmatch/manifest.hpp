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
#include <string>
#include <string_view>

#include "kgmatch/io.hpp"

namespace kgmatch {

// Per-stage provenance record written as manifest.json in an output
// directory. Paths of outputs are relative to that directory.
class Manifest {
 public:
  Manifest(std::string stage, Json config, std::uint64_t seed);

  void add_input(std::string_view role, const std::filesystem::path& path);
  // Hashes `dir / relative` and records its line-delimited record count
  // (pass -1 for non-record files).
  void add_output(const std::filesystem::path& dir, const std::string& relative, long records = -1);

  const Json& json() const { return doc_; }
  void write(const std::filesystem::path& dir) const;

 private:
  Json doc_;
};

// Throws UsageError when `dir` holds a manifest from another stage or
// configuration, unless `force` is set.
void check_manifest_conflict(const std::filesystem::path& dir, std::string_view stage,
                             const Json& config, bool force);

}  // namespace kgmatch
