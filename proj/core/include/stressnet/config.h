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

#ifndef STRESSNET_CONFIG_H_
#define STRESSNET_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "stressnet/classifier.h"
#include "stressnet/describe.h"
#include "stressnet/evaluate.h"
#include "stressnet/events.h"
#include "stressnet/pvdm.h"
#include "stressnet/stress_index.h"
#include "stressnet/synthetic.h"

namespace stressnet {

enum class GroupMode { kPeriod, kPeriodEntity };

struct PipelineConfig {
  struct Paths {
    std::filesystem::path corpus;
    std::filesystem::path events;
    std::filesystem::path patterns;
    std::filesystem::path stopwords;
    std::filesystem::path output = "out";
  } paths;

  // Module seeds derive from this one: semantics uses it as is, the
  // predictor adds 1 and cross-validation adds 2.
  std::uint64_t seed = 42;
  bool deterministic = false;

  TrainParams semantics;
  ClassifierParams predictor;
  LabelWindow labeling;

  PeriodKind period = PeriodKind::kMonth;
  std::vector<double> percentiles = DefaultPercentiles();

  struct Describe {
    GroupMode group = GroupMode::kPeriod;
    int keywords_k = 10;
    int top_groups = 12;  // highest-index groups described; 0 = all
    ExcerptOptions excerpts;
  } describe;

  struct Evaluate {
    int folds = 10;
    std::vector<double> mu_grid = DefaultMuGrid();
    std::vector<int> hidden_grid = {20};
    std::vector<double> learning_rate_grid = {0.05};
    std::vector<int> epoch_grid = {50};
  } evaluate;

  SyntheticSpec synth = SyntheticSpec::Default();

  // Seeds and thread counts actually used by each module.
  TrainParams EffectiveSemantics() const;
  ClassifierParams EffectivePredictor() const;
  std::vector<ClassifierParams> EvaluationCandidates() const;
  std::uint64_t EvaluationSeed() const { return seed + 2; }

  void Validate() const;
  // Canonical `key = value` rendering of every setting; hashed into run
  // manifests.
  std::string Canonical() const;
};

// INI-style file: `[section]` headers and `key = value` lines. Relative
// paths resolve against the file's directory. Unknown keys are rejected.
PipelineConfig LoadConfig(const std::filesystem::path& path);
PipelineConfig ParseConfig(const std::string& text,
                           const std::filesystem::path& base_dir);

}  // namespace stressnet

#endif  // STRESSNET_CONFIG_H_
