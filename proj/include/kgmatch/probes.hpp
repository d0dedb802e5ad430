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

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kgmatch/io.hpp"
#include "kgmatch/kg_store.hpp"
#include "kgmatch/lexicon.hpp"

namespace kgmatch {

inline constexpr std::string_view kMask = "[MASK]";

enum class ProbeFormat { kQA, kMLM };
enum class ProbeFamily { kRelational, kAgentPatient, kConcept };
enum class ConceptTarget { kEvent, kInference };
// Dimensions with both an x- and an o- variant.
enum class SharedDimension { kWant, kReact, kEffect };

std::string_view to_string(ProbeFormat f);
std::string_view to_string(ProbeFamily f);
std::string_view to_string(ConceptTarget t);
std::string_view to_string(SharedDimension d);
std::optional<ProbeFormat> parse_probe_format(std::string_view s);

struct Probe {
  std::string probe_id;
  ProbeFamily family = ProbeFamily::kRelational;
  std::string key;  // "xWant-xNeed", "Want", "event"
  ProbeFormat format = ProbeFormat::kQA;
  std::string prompt;
  std::array<std::string, 2> candidates;
  int gold_index = 0;
  std::vector<std::uint32_t> source;  // pair ids

  // Throws Error when the mask count or gold index is wrong.
  void validate() const;
  friend bool operator==(const Probe&, const Probe&) = default;
};

Json to_json(const Probe& p);
Probe probe_from_json(const Json& j);

// Third-person verb for a dimension: xWant -> wants, xAttr -> is, ...
std::string_view dimension_verb(Dimension d);
// "PersonX" for x-dimensions, "Others" for o-dimensions.
std::string_view dimension_subject(Dimension d);
// "PersonX wants to receive recognition" (no final period).
std::string inference_statement(const EventInferencePair& p);

// Pairs with a "none" inference removed and repeated (event, dimension,
// inference) triples dropped, in corpus order.
std::vector<const EventInferencePair*> probe_source_pairs(const PairCorpus& corpus);

// Throws UsageError when dim_a == dim_b or the two differ in person scope.
std::vector<Probe> gen_relational(const PairCorpus& corpus, Dimension dim_a, Dimension dim_b,
                                  ProbeFormat format);

std::vector<Probe> gen_agent_patient(const PairCorpus& corpus, SharedDimension dim,
                                     ProbeFormat format);

// The word a concept probe swaps out.
struct SalientConcept {
  std::size_t begin = 0;  // byte span in the text
  std::size_t end = 0;
  std::string lemma;
  std::string antonym;
};

// First non-auxiliary verb, else first noun, keeping the first of those
// whose lemma has an antonym.
std::optional<SalientConcept> find_salient(std::string_view text, const LexicalResource& lexicon);

struct ConceptStats {
  std::size_t generated = 0;
  std::size_t skipped = 0;
};

std::vector<Probe> gen_concept(const PairCorpus& corpus, ConceptTarget target, ProbeFormat format,
                               const LexicalResource& lexicon, ConceptStats* stats = nullptr);

// Keeps an equal number of probes per gold class, chosen with `seed`;
// survivors stay in input order.
std::vector<Probe> balance_probes(const std::vector<Probe>& probes, std::uint64_t seed);

struct ProbeSetSize {
  std::string name;  // "xWant vs xEffect", "inference", ...
  ProbeFamily family = ProbeFamily::kRelational;
  std::string key;
  std::size_t count = 0;
  std::array<std::size_t, 2> per_gold{};
};

// One entry per probe set in the fixed suite order.
struct ProbeSuite {
  struct Set {
    ProbeSetSize size;
    std::vector<Probe> qa;
    std::vector<Probe> mlm;
  };
  std::vector<Set> sets;
  ConceptStats concept_event;
  ConceptStats concept_inference;
};

struct ProbeSuiteOptions {
  bool balance = false;
  std::uint64_t seed = 0;
};

ProbeSuite gen_probe_suite(const PairCorpus& corpus, const LexicalResource& lexicon,
                           const ProbeSuiteOptions& options = {});

// "relational_xWant-xNeed_qa.jsonl"
std::string probe_file_name(const ProbeSuite::Set& set, ProbeFormat format);

}  // namespace kgmatch
