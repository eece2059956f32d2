/*
 * Copyright 2026 The stressnet Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef STRESSNET_SYNTHETIC_H_
#define STRESSNET_SYNTHETIC_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "stressnet/common.h"
#include "stressnet/corpus.h"
#include "stressnet/events.h"

namespace stressnet {

// Parameters of the synthetic news generator. Documents placed within
// `LabelWindow::near_days` of one of their bank's events receive distress
// vocabulary with probability `injection_rate`; every document also draws
// distress words at `background_distress_rate` per content token.
struct SyntheticSpec {
  int n_entities = 12;
  int n_docs = 2400;
  Date start = Date{std::chrono::year{2007}, std::chrono::month{1},
                    std::chrono::day{1}};
  int months = 60;
  int events_per_entity = 4;
  double event_doc_fraction = 0.09;
  double ambiguous_doc_fraction = 0.05;
  double second_entity_rate = 0.15;
  double injection_rate = 0.95;
  double injection_density = 0.25;
  double background_distress_rate = 0.005;
  int min_doc_tokens = 60;
  int max_doc_tokens = 120;
  std::vector<std::string> distress_lexicon;
  std::vector<std::string> neutral_lexicon;
  std::vector<std::string> function_words;
  std::uint64_t seed = 42;

  // Spec with the built-in lexicons.
  static SyntheticSpec Default();
  void Validate() const;
};

struct GroundTruth {
  std::string doc_id;
  std::string entity_id;
  int intended_label = 0;  // 1 near event, 0 far, 2 ambiguous band
  std::vector<std::string> injected;
};

struct SyntheticCorpus {
  std::vector<Document> docs;
  std::vector<EventRecord> events;
  std::vector<std::string> entity_ids;
  std::string patterns;   // pattern-file contents
  std::string stopwords;  // stopword-file contents
  std::vector<GroundTruth> truth;
};

SyntheticCorpus GenerateSynthetic(const SyntheticSpec& spec);

struct SyntheticPaths {
  std::filesystem::path corpus;
  std::filesystem::path events;
  std::filesystem::path patterns;
  std::filesystem::path stopwords;
  std::filesystem::path truth;
};

// Writes corpus.jsonl, events.csv, patterns.tsv, stopwords.txt and
// truth.csv (`doc_id,entity_id,intended_label,injected`) into `dir`.
SyntheticPaths WriteSynthetic(const SyntheticCorpus& corpus,
                              const std::filesystem::path& dir);

}  // namespace stressnet

#endif  // STRESSNET_SYNTHETIC_H_
