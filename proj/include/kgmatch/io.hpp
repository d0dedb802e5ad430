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
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace kgmatch {

using Json = nlohmann::json;

std::string read_file(const std::filesystem::path& path);

// Writes through a temporary file in the same directory, then renames.
void write_file(const std::filesystem::path& path, std::string_view content);

// Parses one JSON document per non-blank line. Errors carry the line number.
std::vector<Json> read_jsonl(const std::filesystem::path& path);
void for_each_jsonl(const std::filesystem::path& path,
                    const std::function<void(const Json&, std::size_t line)>& fn);
std::string to_jsonl(const std::vector<Json>& records);

std::string sha256_hex(std::string_view data);
std::string sha256_file(const std::filesystem::path& path);

std::uint64_t fnv1a64(std::string_view s);
std::uint64_t splitmix64(std::uint64_t x);

// Uniform integer in [0, n) from a 64-bit engine, by rejection. Portable
// across standard libraries, unlike std::uniform_int_distribution.
template <typename Engine>
std::uint64_t uniform_index(Engine& engine, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % n);
  std::uint64_t x = engine();
  while (x >= limit) x = engine();
  return x % n;
}

}  // namespace kgmatch
