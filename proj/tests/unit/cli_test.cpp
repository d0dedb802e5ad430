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


#include <filesystem>

#include "doctest.h"
#include "kgmatch/cli.hpp"
#include "kgmatch/io.hpp"
#include "support.hpp"

using namespace kgmatch;
using namespace kgmatch::testing;
namespace fs = std::filesystem;

TEST_CASE("exit codes") {
  CHECK(run_cli({"--help"}).code == cli::kExitOk);
  CHECK(run_cli({}).code == cli::kExitUsage);
  CHECK(run_cli({"no-such-command"}).code == cli::kExitUsage);
  CHECK(run_cli({"split", "--bogus"}).code == cli::kExitUsage);
  CHECK(run_cli({"split", "--out", "x"}).code == cli::kExitUsage);
  CHECK(run_cli({"analyze"}).code == cli::kExitUsage);

  TempDir dir("cli-codes");
  const auto missing = run_cli({"split", "--extraction", (dir / "absent.jsonl").string(), "--out",
                                (dir / "o").string()});
  CHECK(missing.code == cli::kExitData);
  CHECK_FALSE(missing.err.empty());
  CHECK(run_cli({"load-check", "--edges", fixture("conceptnet_100.csv").string(), "--edge-format", "conceptnet"})
            .code == cli::kExitUsage);
  const auto ok = run_cli({"load-check", "--edges", fixture("conceptnet_100.csv").string(), "--edge-format",
                           "assertions-csv"});
  CHECK(ok.code == cli::kExitOk);
  CHECK(ok.out.find("84") != std::string::npos);
}

TEST_CASE("convert-atomic writes one TSV per split and a manifest") {
  TempDir dir("cli-convert");
  const auto out = (dir / "atomic").string();
  const auto r = run_cli({"convert-atomic", "--input", fixture("atomic_native.csv").string(), "--out", out});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(fs::exists(dir / "atomic/trn.tsv"));
  CHECK(fs::exists(dir / "atomic/dev.tsv"));
  CHECK(fs::exists(dir / "atomic/manifest.json"));
  CHECK(r.out.find("trn: 19 pairs") != std::string::npos);
  CHECK(r.out.find("dev: 5 pairs") != std::string::npos);

  const auto before = snapshot(dir / "atomic");
  CHECK(run_cli({"convert-atomic", "--input", fixture("atomic_native.csv").string(), "--out", out}).code ==
        cli::kExitOk);
  CHECK(snapshot(dir / "atomic") == before);
}

TEST_CASE("a manifest from another stage blocks reuse of the directory unless forced") {
  TempDir dir("cli-conflict");
  const auto out = (dir / "o").string();
  REQUIRE(run_cli({"convert-atomic", "--input", fixture("atomic_native.csv").string(), "--out", out}).code ==
          cli::kExitOk);
  const std::vector<std::string> probes = {"gen-probes", "--dev", fixture("atomic_50.tsv").string(), "--out", out};
  const auto blocked = run_cli(probes);
  CHECK(blocked.code == cli::kExitUsage);
  CHECK(blocked.err.find("--force") != std::string::npos);
  auto forced = probes;
  forced.push_back("--force");
  CHECK(run_cli(forced).code == cli::kExitOk);

  write_file(dir / "junk/manifest.json", "not json");
  CHECK(run_cli({"convert-atomic", "--input", fixture("atomic_native.csv").string(), "--out",
                 (dir / "junk").string()})
            .code == cli::kExitUsage);
}

TEST_CASE("gen-probes writes both formats for every probe set") {
  TempDir dir("cli-probes");
  const auto r = run_cli({"gen-probes", "--dev", fixture("atomic_200.tsv").string(), "--out", (dir / "p").string()});
  REQUIRE(r.code == cli::kExitOk);
  std::size_t qa = 0;
  std::size_t mlm = 0;
  for (const auto& entry : fs::directory_iterator(dir / "p/dev")) {
    const auto name = entry.path().filename().string();
    if (name.ends_with("_qa.jsonl")) ++qa;
    if (name.ends_with("_mlm.jsonl")) ++mlm;
  }
  CHECK(qa == 23);
  CHECK(mlm == 23);
  CHECK(fs::exists(dir / "p/sizes.json"));
  CHECK(fs::exists(dir / "p/sizes.txt"));
  CHECK_FALSE(fs::exists(dir / "p/train"));
  CHECK(run_cli({"gen-probes", "--out", (dir / "q").string()}).code == cli::kExitUsage);
}
