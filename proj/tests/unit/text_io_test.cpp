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


#include <random>
#include <regex>
#include <sstream>

#include "doctest.h"
#include "kgmatch/error.hpp"
#include "kgmatch/io.hpp"
#include "kgmatch/kg_store.hpp"
#include "kgmatch/text.hpp"
#include "support.hpp"

using namespace kgmatch;
using namespace kgmatch::testing;

TEST_CASE("whitespace and sentence helpers") {
  CHECK(normalize_whitespace("  a \t b\n\nc  ") == "a b c");
  CHECK(trim("  x y ") == "x y");
  CHECK(to_lower("PersonX Goes") == "personx goes");
  CHECK(as_sentence("PersonX puts out a fire") == "PersonX puts out a fire.");
  CHECK(as_sentence("Is it?") == "Is it?");
  CHECK(split("a,b,,c", ',') == std::vector<std::string>{"a", "b", "", "c"});
  CHECK(join({"x", "y"}, ". ") == "x. y");
}

TEST_CASE("sentence segmentation") {
  const auto s = segment_sentences("Get a pot. Boil the egg!  Is it done? Serve");
  REQUIRE(s.size() == 4);
  CHECK(s[0] == "Get a pot.");
  CHECK(s[1] == "Boil the egg!");
  CHECK(s[2] == "Is it done?");
  CHECK(s[3] == "Serve");
}

TEST_CASE("word spans cover the words and nothing else") {
  const std::string text = "PersonX's dog, barks.";
  for (const auto& w : word_spans(text)) CHECK(text.substr(w.begin, w.end - w.begin) == w.text);
}

TEST_CASE("sha256 and fnv1a64 known vectors") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(splitmix64(0) == 0xe220a8397b1dcdafULL);
}

TEST_CASE("uniform_index stays in range and reaches every value") {
  std::mt19937_64 rng(5);
  std::vector<int> seen(7, 0);
  for (int i = 0; i < 2000; ++i) {
    const auto v = uniform_index(rng, 7);
    REQUIRE(v < 7);
    ++seen[v];
  }
  for (int c : seen) CHECK(c > 0);
}

TEST_CASE("jsonl reading reports the bad line") {
  TempDir dir("jsonl");
  write_file(dir / "x.jsonl", "{\"a\":1}\n\n{oops}\n");
  try {
    read_jsonl(dir / "x.jsonl");
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find(":3") != std::string::npos);
  }
  CHECK_THROWS_AS(read_file(dir / "missing"), DataError);
}

TEST_CASE("tokenizer agrees with a regex term counter on fixture text") {
  const std::regex word("[A-Za-z0-9\\x80-\\xff]+");
  const auto corpus = load_pair_corpus(fixture("atomic_200.tsv"));
  const auto& tok = shipped_tokenizer();
  for (const auto& p : corpus.pairs) {
    const auto text = p.text();
    std::vector<std::string> expected;
    for (auto it = std::sregex_iterator(text.begin(), text.end(), word); it != std::sregex_iterator(); ++it)
      expected.push_back(to_lower(it->str()));
    REQUIRE(tok.words(text) == expected);
    std::vector<std::string> content;
    for (const auto& w : expected)
      if (!tok.is_stopword(w)) content.push_back(w);
    CHECK(tok.tokenize(text) == content);
  }
}

TEST_CASE("shipped stopword list") {
  const auto& tok = shipped_tokenizer();
  CHECK(tok.stopword_count() == 160);
  CHECK(tok.is_stopword("the"));
  CHECK(tok.is_stopword("to"));
  CHECK_FALSE(tok.is_stopword("personx"));
  CHECK_FALSE(tok.is_stopword("fire"));
}
