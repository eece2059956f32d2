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

#ifndef STRESSNET_PIPELINE_H_
#define STRESSNET_PIPELINE_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "stressnet/config.h"

namespace stressnet {

enum class Stage {
  kIngest,
  kLabel,
  kEmbed,
  kTrain,
  kScore,
  kIndex,
  kDescribe,
  kEvaluate
};

std::string_view StageName(Stage stage);
Stage ParseStage(std::string_view name);
std::vector<Stage> AllStages();

// Artifact file names inside the output directory.
namespace artifacts {
inline constexpr std::string_view kDocuments = "documents.jsonl";
inline constexpr std::string_view kMentions = "mentions.csv";
inline constexpr std::string_view kCases = "cases.csv";
inline constexpr std::string_view kEmbedding = "embedding.pvdm";
inline constexpr std::string_view kClassifier = "classifier.ffnn";
inline constexpr std::string_view kScores = "scores.csv";
inline constexpr std::string_view kIndex = "index.csv";
inline constexpr std::string_view kCrossSection = "cross_section.csv";
inline constexpr std::string_view kKeywords = "keywords.csv";
inline constexpr std::string_view kExcerpts = "excerpts.csv";
inline constexpr std::string_view kEvaluation = "evaluation.csv";
inline constexpr std::string_view kEvaluationMeanCm = "evaluation_mean_cm.csv";
inline constexpr std::string_view kEvaluationAuc = "evaluation_auc.csv";
inline constexpr std::string_view kManifest = "run_manifest.json";
}  // namespace artifacts

struct StageTiming {
  Stage stage;
  double seconds = 0.0;
};

// Runs the stages in pipeline order. Each stage reads the artifacts of the
// stages it depends on and throws Error naming the missing stage when they
// are absent. Outputs are written atomically and the run manifest is
// updated after every stage.
std::vector<StageTiming> RunPipeline(const PipelineConfig& config,
                                     const std::vector<Stage>& stages);

}  // namespace stressnet

#endif  // STRESSNET_PIPELINE_H_
