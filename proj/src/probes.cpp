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

#include "kgmatch/probes.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <tuple>

#include <fmt/format.h>

#include "kgmatch/error.hpp"
#include "kgmatch/knowledge.hpp"
#include "kgmatch/text.hpp"

namespace kgmatch {
namespace {

constexpr std::string_view kNext = "What happens next?";
constexpr std::string_view kHappened = "What happened?";

std::string strip_final_punct(std::string_view s) {
  s = trim(s);
  while (!s.empty() && (s.back() == '.' || s.back() == '!' || s.back() == '?')) s.remove_suffix(1);
  return std::string(trim(s));
}

std::string probe_id(ProbeFamily family, std::string_view key, ProbeFormat format, std::size_t n) {
  return fmt::format("{}:{}:{}:{:06d}", to_string(family), key, to_string(format), n);
}

Dimension variant(SharedDimension d, bool agent) {
  switch (d) {
    case SharedDimension::kWant: return agent ? Dimension::kXWant : Dimension::kOWant;
    case SharedDimension::kReact: return agent ? Dimension::kXReact : Dimension::kOReact;
    case SharedDimension::kEffect: return agent ? Dimension::kXEffect : Dimension::kOEffect;
  }
  return Dimension::kXWant;
}

std::string_view base_verb(SharedDimension d) {
  switch (d) {
    case SharedDimension::kWant: return "want";
    case SharedDimension::kReact: return "feel";
    case SharedDimension::kEffect: return "effect";
  }
  return "";
}

std::string swap_span(std::string_view text, const SalientConcept& c, std::string_view with) {
  return std::string(text.substr(0, c.begin)) + std::string(with) + std::string(text.substr(c.end));
}

}  // namespace

std::string_view to_string(ProbeFormat f) { return f == ProbeFormat::kQA ? "qa" : "mlm"; }

std::string_view to_string(ProbeFamily f) {
  switch (f) {
    case ProbeFamily::kRelational: return "relational";
    case ProbeFamily::kAgentPatient: return "agent_patient";
    case ProbeFamily::kConcept: return "concept";
  }
  return "";
}

std::string_view to_string(ConceptTarget t) { return t == ConceptTarget::kEvent ? "event" : "inference"; }

std::string_view to_string(SharedDimension d) {
  switch (d) {
    case SharedDimension::kWant: return "Want";
    case SharedDimension::kReact: return "React";
    case SharedDimension::kEffect: return "Effect";
  }
  return "";
}

std::optional<ProbeFormat> parse_probe_format(std::string_view s) {
  const auto lower = to_lower(s);
  if (lower == "qa") return ProbeFormat::kQA;
  if (lower == "mlm") return ProbeFormat::kMLM;
  return std::nullopt;
}

void Probe::validate() const {
  std::size_t masks = 0;
  for (auto pos = prompt.find(kMask); pos != std::string::npos; pos = prompt.find(kMask, pos + 1))
    ++masks;
  if (format == ProbeFormat::kMLM && masks != 1)
    throw Error(fmt::format("probe {}: MLM prompt has {} masks", probe_id, masks));
  if (format == ProbeFormat::kQA && masks != 0)
    throw Error(fmt::format("probe {}: QA prompt contains a mask", probe_id));
  if (gold_index != 0 && gold_index != 1)
    throw Error(fmt::format("probe {}: gold_index {}", probe_id, gold_index));
}

Json to_json(const Probe& p) {
  return Json{{"probe_id", p.probe_id},
              {"family", to_string(p.family)},
              {"key", p.key},
              {"format", to_string(p.format)},
              {"prompt", p.prompt},
              {"candidates", p.candidates},
              {"gold_index", p.gold_index},
              {"source", p.source}};
}

Probe probe_from_json(const Json& j) {
  Probe p;
  try {
    p.probe_id = j.at("probe_id").get<std::string>();
    const auto family = j.at("family").get<std::string>();
    if (family == "relational") p.family = ProbeFamily::kRelational;
    else if (family == "agent_patient") p.family = ProbeFamily::kAgentPatient;
    else if (family == "concept") p.family = ProbeFamily::kConcept;
    else throw DataError("unknown probe family " + family);
    p.key = j.at("key").get<std::string>();
    auto format = parse_probe_format(j.at("format").get<std::string>());
    if (!format) throw DataError("unknown probe format");
    p.format = *format;
    p.prompt = j.at("prompt").get<std::string>();
    const auto cands = j.at("candidates").get<std::vector<std::string>>();
    if (cands.size() != 2) throw DataError("probe needs exactly 2 candidates");
    p.candidates = {cands[0], cands[1]};
    p.gold_index = j.at("gold_index").get<int>();
    p.source = j.at("source").get<std::vector<std::uint32_t>>();
  } catch (const Json::exception& e) {
    throw DataError(std::string("bad probe record: ") + e.what());
  }
  try {
    p.validate();
  } catch (const DataError&) {
    throw;
  } catch (const Error& e) {
    throw DataError(e.what());
  }
  return p;
}

std::string_view dimension_verb(Dimension d) {
  switch (d) {
    case Dimension::kXWant:
    case Dimension::kOWant: return "wants";
    case Dimension::kXNeed: return "needs";
    case Dimension::kXIntent: return "intends";
    case Dimension::kXReact:
    case Dimension::kOReact: return "feels";
    case Dimension::kXEffect:
    case Dimension::kOEffect: return "effect";
    case Dimension::kXAttr: return "is";
  }
  return "";
}

std::string_view dimension_subject(Dimension d) { return is_agent_dimension(d) ? "PersonX" : "Others"; }

std::string inference_statement(const EventInferencePair& p) {
  return fmt::format("{} {} {}", dimension_subject(p.dimension), dimension_verb(p.dimension),
                     strip_final_punct(p.inference));
}

std::vector<const EventInferencePair*> probe_source_pairs(const PairCorpus& corpus) {
  std::vector<const EventInferencePair*> out;
  std::set<std::tuple<std::string_view, Dimension, std::string_view>> seen;
  for (const auto& p : corpus.pairs) {
    if (to_lower(trim(p.inference)) == "none") continue;
    if (!seen.emplace(p.event, p.dimension, p.inference).second) continue;
    out.push_back(&p);
  }
  return out;
}

std::vector<Probe> gen_relational(const PairCorpus& corpus, Dimension dim_a, Dimension dim_b,
                                  ProbeFormat format) {
  if (dim_a == dim_b) throw UsageError("relational probes need two different dimensions");
  if (is_agent_dimension(dim_a) != is_agent_dimension(dim_b))
    throw UsageError(fmt::format("{} and {} concern different people", to_string(dim_a), to_string(dim_b)));
  const auto key = fmt::format("{}-{}", to_string(dim_a), to_string(dim_b));
  const auto subject = dimension_subject(dim_a);
  std::vector<Probe> out;
  for (const auto* p : probe_source_pairs(corpus)) {
    if (p->dimension != dim_a && p->dimension != dim_b) continue;
    Probe probe;
    probe.probe_id = probe_id(ProbeFamily::kRelational, key, format, out.size());
    probe.family = ProbeFamily::kRelational;
    probe.key = key;
    probe.format = format;
    probe.gold_index = p->dimension == dim_a ? 0 : 1;
    probe.source = {p->pair_id};
    const auto inference = strip_final_punct(p->inference);
    if (format == ProbeFormat::kQA) {
      probe.prompt = fmt::format("{} {}", as_sentence(p->event), kNext);
      probe.candidates = {fmt::format("{} {} {}", subject, dimension_verb(dim_a), inference),
                          fmt::format("{} {} {}", subject, dimension_verb(dim_b), inference)};
    } else {
      probe.prompt = fmt::format("{} {} {} {}", as_sentence(p->event), subject, kMask, as_sentence(inference));
      probe.candidates = {std::string(dimension_verb(dim_a)), std::string(dimension_verb(dim_b))};
    }
    out.push_back(std::move(probe));
  }
  return out;
}

std::vector<Probe> gen_agent_patient(const PairCorpus& corpus, SharedDimension dim,
                                     ProbeFormat format) {
  const auto x = variant(dim, true);
  const auto o = variant(dim, false);
  const std::string key(to_string(dim));
  std::vector<Probe> out;
  for (const auto* p : probe_source_pairs(corpus)) {
    if (p->dimension != x && p->dimension != o) continue;
    Probe probe;
    probe.probe_id = probe_id(ProbeFamily::kAgentPatient, key, format, out.size());
    probe.family = ProbeFamily::kAgentPatient;
    probe.key = key;
    probe.format = format;
    probe.gold_index = p->dimension == x ? 0 : 1;
    probe.source = {p->pair_id};
    probe.candidates = {"PersonX", "others"};
    const auto inference = strip_final_punct(p->inference);
    if (format == ProbeFormat::kQA)
      probe.prompt = fmt::format("{} Who {} {}?", as_sentence(p->event), dimension_verb(x), inference);
    else
      probe.prompt = fmt::format("{} {} {} {}", as_sentence(p->event), kMask, base_verb(dim), as_sentence(inference));
    out.push_back(std::move(probe));
  }
  return out;
}

std::optional<SalientConcept> find_salient(std::string_view text, const LexicalResource& lexicon) {
  std::optional<WordSpan> verb;
  std::optional<WordSpan> noun;
  for (auto& span : word_spans(text)) {
    const auto pos = lexicon.pos(span.text);
    if (!pos) continue;
    if (*pos == CoarsePos::kVerb && !verb) verb = span;
    if (*pos == CoarsePos::kNoun && !noun) noun = span;
  }
  for (const auto& choice : {verb, noun}) {
    if (!choice) continue;
    auto lemma = lexicon.lemma(choice->text);
    if (auto antonym = lexicon.antonym(lemma))
      return SalientConcept{choice->begin, choice->end, std::move(lemma), display_lemma(*antonym)};
  }
  return std::nullopt;
}

std::vector<Probe> gen_concept(const PairCorpus& corpus, ConceptTarget target, ProbeFormat format,
                               const LexicalResource& lexicon, ConceptStats* stats) {
  ConceptStats local;
  ConceptStats& st = stats ? *stats : local;
  st = {};
  const std::string key(to_string(target));
  std::vector<Probe> out;
  for (const auto* p : probe_source_pairs(corpus)) {
    const std::string inference = strip_final_punct(p->inference);
    const std::string event = strip_final_punct(p->event);
    const auto salient = find_salient(target == ConceptTarget::kEvent ? event : inference, lexicon);
    if (!salient) {
      ++st.skipped;
      continue;
    }
    Probe probe;
    probe.probe_id = probe_id(ProbeFamily::kConcept, key, format, out.size());
    probe.family = ProbeFamily::kConcept;
    probe.key = key;
    probe.format = format;
    probe.gold_index = 0;
    probe.source = {p->pair_id};
    const std::string subject(dimension_subject(p->dimension));
    const std::string verb(dimension_verb(p->dimension));
    const std::string statement = inference_statement(*p);
    if (target == ConceptTarget::kEvent) {
      if (format == ProbeFormat::kQA) {
        probe.prompt = fmt::format("{} {}", as_sentence(statement), kHappened);
        probe.candidates = {event, swap_span(event, *salient, salient->antonym)};
      } else {
        probe.prompt = fmt::format("{} {}", as_sentence(swap_span(event, *salient, kMask)), as_sentence(statement));
        probe.candidates = {salient->lemma, salient->antonym};
      }
    } else {
      if (format == ProbeFormat::kQA) {
        probe.prompt = fmt::format("{} {}", as_sentence(event), kNext);
        probe.candidates = {statement, fmt::format("{} {} {}", subject, verb,
                                                   swap_span(inference, *salient, salient->antonym))};
      } else {
        probe.prompt = fmt::format("{} {} {} {}", as_sentence(event), subject, verb,
                                   as_sentence(swap_span(inference, *salient, kMask)));
        probe.candidates = {salient->lemma, salient->antonym};
      }
    }
    ++st.generated;
    out.push_back(std::move(probe));
  }
  return out;
}

std::vector<Probe> balance_probes(const std::vector<Probe>& probes, std::uint64_t seed) {
  std::array<std::vector<std::size_t>, 2> by_gold;
  for (std::size_t i = 0; i < probes.size(); ++i) by_gold[static_cast<std::size_t>(probes[i].gold_index)].push_back(i);
  const std::size_t keep = std::min(by_gold[0].size(), by_gold[1].size());
  std::mt19937_64 rng(seed);
  std::vector<bool> kept(probes.size(), false);
  for (auto& cls : by_gold) {
    for (std::size_t i = 0; i + 1 < cls.size(); ++i)
      std::swap(cls[i], cls[i + uniform_index(rng, cls.size() - i)]);
    for (std::size_t i = 0; i < keep; ++i) kept[cls[i]] = true;
  }
  std::vector<Probe> out;
  for (std::size_t i = 0; i < probes.size(); ++i)
    if (kept[i]) out.push_back(probes[i]);
  return out;
}

ProbeSuite gen_probe_suite(const PairCorpus& corpus, const LexicalResource& lexicon,
                           const ProbeSuiteOptions& options) {
  ProbeSuite suite;
  auto add = [&](std::string name, ProbeFamily family, std::vector<Probe> qa, std::vector<Probe> mlm) {
    ProbeSuite::Set set;
    set.size.name = std::move(name);
    set.size.family = family;
    set.size.key = qa.empty() ? std::string() : qa.front().key;
    if (options.balance && family != ProbeFamily::kConcept) {
      const auto seed = splitmix64(options.seed ^ fnv1a64(set.size.name));
      qa = balance_probes(qa, seed);
      mlm = balance_probes(mlm, seed);
    }
    set.size.count = qa.size();
    for (const auto& p : qa) ++set.size.per_gold[static_cast<std::size_t>(p.gold_index)];
    set.qa = std::move(qa);
    set.mlm = std::move(mlm);
    suite.sets.push_back(std::move(set));
  };
  auto relational = [&](const std::vector<Dimension>& dims) {
    for (std::size_t i = 0; i < dims.size(); ++i) {
      for (std::size_t j = i + 1; j < dims.size(); ++j) {
        auto qa = gen_relational(corpus, dims[i], dims[j], ProbeFormat::kQA);
        auto mlm = gen_relational(corpus, dims[i], dims[j], ProbeFormat::kMLM);
        add(fmt::format("{} vs {}", to_string(dims[i]), to_string(dims[j])), ProbeFamily::kRelational,
            std::move(qa), std::move(mlm));
        suite.sets.back().size.key = fmt::format("{}-{}", to_string(dims[i]), to_string(dims[j]));
      }
    }
  };
  relational({Dimension::kXWant, Dimension::kXEffect, Dimension::kXReact, Dimension::kXIntent,
              Dimension::kXNeed, Dimension::kXAttr});
  relational({Dimension::kOWant, Dimension::kOEffect, Dimension::kOReact});
  for (auto d : {SharedDimension::kWant, SharedDimension::kEffect, SharedDimension::kReact}) {
    add(fmt::format("{} vs {}", to_string(variant(d, true)), to_string(variant(d, false))),
        ProbeFamily::kAgentPatient, gen_agent_patient(corpus, d, ProbeFormat::kQA),
        gen_agent_patient(corpus, d, ProbeFormat::kMLM));
    suite.sets.back().size.key = std::string(to_string(d));
  }
  for (auto t : {ConceptTarget::kInference, ConceptTarget::kEvent}) {
    auto& stats = t == ConceptTarget::kEvent ? suite.concept_event : suite.concept_inference;
    auto qa = gen_concept(corpus, t, ProbeFormat::kQA, lexicon, &stats);
    auto mlm = gen_concept(corpus, t, ProbeFormat::kMLM, lexicon);
    add(std::string(to_string(t)), ProbeFamily::kConcept, std::move(qa), std::move(mlm));
    suite.sets.back().size.key = std::string(to_string(t));
  }
  return suite;
}

std::string probe_file_name(const ProbeSuite::Set& set, ProbeFormat format) {
  return fmt::format("{}_{}_{}.jsonl", to_string(set.size.family), set.size.key, to_string(format));
}

}  // namespace kgmatch
