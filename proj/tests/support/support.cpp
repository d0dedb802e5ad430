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


#include "support.hpp"

#include <atomic>
#include <sstream>

#include <unistd.h>

#include "kgmatch/cli.hpp"
#include "kgmatch/io.hpp"

namespace kgmatch::testing {
namespace fs = std::filesystem;

fs::path fixture(const std::string& name) { return fs::path(KGMATCH_FIXTURE_DIR) / name; }

const Tokenizer& shipped_tokenizer() {
  static const Tokenizer t = Tokenizer::from_file(default_resource_dir() / "stopwords.txt");
  return t;
}

const LexicalResource& shipped_lexicon() {
  static const LexicalResource lex = LexicalResource::load(default_resource_dir() / "lexicon");
  return lex;
}

TempDir::TempDir(const std::string& tag) {
  static std::atomic<int> counter{0};
  path_ = fs::temp_directory_path() /
          ("kgmatch-test-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  fs::remove_all(path_);
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

CliResult run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"kgmatch"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  CliResult r;
  r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) files[fs::relative(e.path(), dir).generic_string()] = read_file(e.path());
  }
  return files;
}

}  // namespace kgmatch::testing
