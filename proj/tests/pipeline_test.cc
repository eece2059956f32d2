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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <set>

#include <unistd.h>

#include <fmt/format.h>
#include <gtest/gtest.h>

#include "stressnet/config.h"
#include "stressnet/pipeline.h"
#include "stressnet/synthetic.h"

namespace stressnet {
namespace {

namespace fs = std::filesystem;

fs::path TempDir(const std::string& name) {
  auto dir = fs::temp_directory_path() / fmt::format("stressnet_{}_{}", name, ::getpid());
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

SyntheticSpec SmallSpec() {
  auto spec = SyntheticSpec::Default();
  spec.n_docs = 300;
  spec.n_entities = 6;
  return spec;
}

TEST(Synthetic, FullInjectionMarksEveryNearDocument) {
  auto spec = SmallSpec();
  spec.injection_rate = 1.0;
  const auto corpus = GenerateSynthetic(spec);
  const std::set<std::string> lexicon(spec.distress_lexicon.begin(), spec.distress_lexicon.end());
  std::map<std::string, const Document*> docs;
  for (const auto& d : corpus.docs) docs[d.doc_id] = &d;
  int near = 0;
  std::set<std::string> seen;
  for (const auto& t : corpus.truth) {
    // The first row per document belongs to its primary entity.
    if (!seen.insert(t.doc_id).second || t.intended_label != 1) continue;
    ++near;
    bool hit = false;
    for (const auto& tok : docs.at(t.doc_id)->tokens) hit |= lexicon.contains(tok);
    EXPECT_TRUE(hit) << t.doc_id;
    EXPECT_FALSE(t.injected.empty());
  }
  EXPECT_GT(near, 10);
}

// With injection off, distress-token counts should not depend on whether a
// document sits near an event: 2x2 chi-square on token counts.
TEST(Synthetic, NoInjectionMeansNoAssociation) {
  auto spec = SmallSpec();
  spec.n_docs = 2000;
  spec.injection_rate = 0.0;
  spec.background_distress_rate = 0.02;
  const auto corpus = GenerateSynthetic(spec);
  const std::set<std::string> lexicon(spec.distress_lexicon.begin(), spec.distress_lexicon.end());
  std::map<std::string, int> intended;
  for (const auto& t : corpus.truth) intended[t.doc_id] = std::max(intended[t.doc_id], t.intended_label == 1 ? 1 : 0);
  double table[2][2] = {{0, 0}, {0, 0}};
  for (const auto& d : corpus.docs) {
    const int row = intended[d.doc_id];
    for (const auto& tok : d.tokens) table[row][lexicon.contains(tok) ? 1 : 0] += 1;
  }
  const double n = table[0][0] + table[0][1] + table[1][0] + table[1][1];
  double chi2 = 0.0;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      const double expect = (table[r][0] + table[r][1]) * (table[0][c] + table[1][c]) / n;
      chi2 += (table[r][c] - expect) * (table[r][c] - expect) / expect;
    }
  }
  EXPECT_LT(chi2, 6.635);  // 1 degree of freedom, p = 0.01
  EXPECT_GT(table[1][1], 0.0);
}

TEST(Synthetic, SameSeedSameFiles) {
  const auto spec = SmallSpec();
  const auto a = WriteSynthetic(GenerateSynthetic(spec), TempDir("synth_a"));
  const auto b = WriteSynthetic(GenerateSynthetic(spec), TempDir("synth_b"));
  EXPECT_EQ(ReadFile(a.corpus), ReadFile(b.corpus));
  EXPECT_EQ(ReadFile(a.events), ReadFile(b.events));
  EXPECT_EQ(ReadFile(a.truth), ReadFile(b.truth));
  auto other = spec;
  other.seed = 43;
  EXPECT_NE(SerializeCorpus(GenerateSynthetic(other).docs), ReadFile(a.corpus));
}

TEST(Synthetic, RejectsInfeasibleSpecs) {
  auto spec = SmallSpec();
  spec.n_docs = 0;
  EXPECT_THROW(GenerateSynthetic(spec), Error);
  spec = SmallSpec();
  spec.neutral_lexicon.push_back(spec.distress_lexicon.front());
  EXPECT_THROW(GenerateSynthetic(spec), Error);
  spec = SmallSpec();
  spec.injection_rate = 1.5;
  EXPECT_THROW(GenerateSynthetic(spec), Error);
}

TEST(Config, ParsesSectionsAndResolvesPaths) {
  const auto cfg = ParseConfig(
      "[general]\nseed = 7\n[paths]\ncorpus = data/c.jsonl\noutput = /abs/out\n"
      "[semantics]\ndim = 16\n[evaluate]\nmu_grid = 0.5, 0.9\n[describe]\nentity_mode = require\n",
      "/base");
  EXPECT_EQ(cfg.seed, 7u);
  EXPECT_EQ(cfg.paths.corpus, fs::path("/base/data/c.jsonl"));
  EXPECT_EQ(cfg.paths.output, fs::path("/abs/out"));
  EXPECT_EQ(cfg.semantics.dim, 16);
  EXPECT_EQ(cfg.evaluate.mu_grid, (std::vector<double>{0.5, 0.9}));
  EXPECT_EQ(cfg.describe.excerpts.entity_mode, EntityMode::kRequire);
  EXPECT_EQ(cfg.EffectiveSemantics().rng_seed, 7u);
  EXPECT_EQ(cfg.EffectivePredictor().seed, 8u);
  EXPECT_EQ(cfg.EvaluationSeed(), 9u);
}

TEST(Config, RejectsUnknownKeysAndBadValues) {
  EXPECT_THROW(ParseConfig("[semantics]\ndimension = 3\n", "/"), Error);
  EXPECT_THROW(ParseConfig("[nope]\nx = 1\n", "/"), Error);
  EXPECT_THROW(ParseConfig("[semantics]\ndim = many\n", "/"), Error);
  EXPECT_THROW(ParseConfig("[describe]\nentity_mode = sometimes\n", "/"), Error);
}

TEST(Config, CanonicalFormIsStable) {
  const auto a = ParseConfig("[general]\nseed = 3\n", "/x");
  const auto b = ParseConfig("[general]\nseed=3\n\n", "/x");
  EXPECT_EQ(a.Canonical(), b.Canonical());
  EXPECT_NE(a.Canonical(), ParseConfig("[general]\nseed = 4\n", "/x").Canonical());
}

TEST(Stages, NamesRoundTrip) {
  for (Stage s : AllStages()) EXPECT_EQ(ParseStage(StageName(s)), s);
  EXPECT_THROW(ParseStage("fly"), Error);
}

PipelineConfig SmallPipeline(const std::string& name) {
  const auto dir = TempDir(name);
  const auto paths = WriteSynthetic(GenerateSynthetic(SmallSpec()), dir);
  PipelineConfig cfg;
  cfg.paths.corpus = paths.corpus;
  cfg.paths.events = paths.events;
  cfg.paths.patterns = paths.patterns;
  cfg.paths.stopwords = paths.stopwords;
  cfg.paths.output = dir / "out";
  cfg.deterministic = true;
  cfg.semantics.dim = 16;
  cfg.semantics.epochs = 3;
  cfg.predictor.hidden_dim = 4;
  cfg.predictor.epochs = 5;
  cfg.evaluate.folds = 3;
  cfg.evaluate.mu_grid = {0.5, 0.9};
  cfg.evaluate.hidden_grid = {4};
  cfg.evaluate.epoch_grid = {5};
  cfg.describe.top_groups = 3;
  return cfg;
}

TEST(Pipeline, ScoreWithoutTrainNamesMissingStage) {
  const auto cfg = SmallPipeline("dep");
  RunPipeline(cfg, {Stage::kIngest, Stage::kLabel, Stage::kEmbed});
  try {
    RunPipeline(cfg, {Stage::kScore});
    FAIL() << "expected dependency error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("train"), std::string::npos) << e.what();
  }
}

TEST(Pipeline, FullRunWritesArtifactsDeterministically) {
  const auto cfg = SmallPipeline("full");
  const auto timings = RunPipeline(cfg, AllStages());
  EXPECT_EQ(timings.size(), AllStages().size());
  const auto out = cfg.paths.output;
  const std::pair<std::string_view, std::string> headers[] = {
      {artifacts::kMentions, "doc_id,entity_id,start,end"},
      {artifacts::kCases, "doc_id,entity_id,published,label"},
      {artifacts::kScores, "doc_id,entity_id,period,score"},
      {artifacts::kIndex, "period,entity_id,index,count"},
      {artifacts::kKeywords, "group,rank,score,keywords"},
      {artifacts::kExcerpts, "group,rank,score,doc_id,start,end,text"},
      {artifacts::kEvaluation, "mu,Ur_mean,Ur_sd,F_mean,F_sd,TN,FN,FP,TP"},
  };
  for (const auto& [file, header] : headers) {
    const auto text = ReadFile(out / file);
    EXPECT_EQ(text.substr(0, text.find('\n')), header) << file;
    EXPECT_GT(std::count(text.begin(), text.end(), '\n'), 1) << file;
  }
  for (auto name : {artifacts::kDocuments, artifacts::kEmbedding, artifacts::kClassifier,
                    artifacts::kCrossSection, artifacts::kEvaluationAuc,
                    artifacts::kEvaluationMeanCm, artifacts::kManifest}) {
    EXPECT_TRUE(fs::exists(out / name)) << name;
  }
  const auto first_index = ReadFile(out / artifacts::kIndex);
  const auto first_model = ReadFile(out / artifacts::kEmbedding);
  RunPipeline(cfg, AllStages());
  EXPECT_EQ(ReadFile(out / artifacts::kIndex), first_index);
  EXPECT_EQ(ReadFile(out / artifacts::kEmbedding), first_model);
  for (const auto& entry : fs::directory_iterator(out)) {
    EXPECT_EQ(entry.path().filename().string().find(".tmp"), std::string::npos);
  }
}

}  // namespace
}  // namespace stressnet
