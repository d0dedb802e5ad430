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

#include <string>
#include <string_view>
#include <vector>

namespace kgmatch {

// Collapses whitespace runs to one space and trims both ends.
std::string normalize_whitespace(std::string_view s);

std::string to_lower(std::string_view s);
std::string_view trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
std::string join(const std::vector<std::string>& parts, std::string_view sep);
bool ends_with_punct(std::string_view s);

// Appends a period unless the text already ends in sentence punctuation.
std::string as_sentence(std::string_view s);

// Splits on '.', '!' or '?' followed by whitespace; newlines also end a
// sentence. Empty fragments are dropped.
std::vector<std::string> segment_sentences(std::string_view paragraph);

// A word-level span inside a larger string.
struct WordSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::string text;
};

// Alphanumeric runs (plus apostrophes inside a run) with byte offsets.
std::vector<WordSpan> word_spans(std::string_view s);

}  // namespace kgmatch
