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

#include "kgmatch/manifest.hpp"

#include "kgmatch/error.hpp"

namespace kgmatch {

Manifest::Manifest(std::string stage, Json config, std::uint64_t seed) {
  doc_ = Json{{"stage", std::move(stage)},
              {"config", std::move(config)},
              {"seed", seed},
              {"inputs", Json::array()},
              {"outputs", Json::array()}};
}

void Manifest::add_input(std::string_view role, const std::filesystem::path& path) {
  doc_["inputs"].push_back(
      Json{{"role", role}, {"path", path.generic_string()}, {"sha256", sha256_file(path)}});
}

void Manifest::add_output(const std::filesystem::path& dir, const std::string& relative, long records) {
  Json entry{{"path", relative}, {"sha256", sha256_file(dir / relative)}};
  if (records >= 0) entry["records"] = records;
  doc_["outputs"].push_back(std::move(entry));
}

void Manifest::write(const std::filesystem::path& dir) const {
  write_file(dir / "manifest.json", doc_.dump(2) + "\n");
}

void check_manifest_conflict(const std::filesystem::path& dir, std::string_view stage,
                             const Json& config, bool force) {
  const auto path = dir / "manifest.json";
  if (force || !std::filesystem::exists(path)) return;
  Json existing;
  try {
    existing = Json::parse(read_file(path));
  } catch (const Json::exception&) {
    throw UsageError(path.string() + " is not a manifest; pass --force to overwrite");
  }
  if (existing.value("stage", "") != stage || existing.value("config", Json()) != config)
    throw UsageError(path.string() +
                     " records a different stage or configuration; pass --force to overwrite");
}

}  // namespace kgmatch
