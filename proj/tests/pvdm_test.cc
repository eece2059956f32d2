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

#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "fixtures.h"
#include "stressnet/pvdm.h"
#include "stressnet/synthetic.h"

namespace stressnet {
namespace {

Document Doc(std::string id, std::vector<std::string> tokens) {
  Document d;
  d.doc_id = std::move(id);
  d.published = ParseDate("2010-01-01");
  d.tokens = std::move(tokens);
  return d;
}

TEST(HierarchicalSoftmax, ZeroModelBalancedTreeIsUniform) {
  EmbeddingModel model(Vocabulary::FromEntries({{"a", 5}, {"b", 5}, {"c", 5}, {"d", 5}}, 1), 6, 2);
  const Vector h(6, 0.0);
  for (int w = 0; w < 4; ++w) EXPECT_EQ(model.Probability(h, w), 0.25);
}

TEST(HierarchicalSoftmax, ZeroModelGivesPowerOfTwo) {
  EmbeddingModel model(Vocabulary::FromEntries({{"a", 9}, {"b", 4}, {"c", 2}, {"d", 1}, {"e", 1}}, 1), 3, 2);
  const Vector h(3, 0.0);
  for (int w = 0; w < 5; ++w) {
    EXPECT_EQ(model.Probability(h, w),
              std::ldexp(1.0, -static_cast<int>(model.tree().code(w).size())));
  }
}

TEST(HierarchicalSoftmax, RandomModelsNormalize) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const int v = 2 + static_cast<int>(rng() % 49);
    const int dim = 1 + static_cast<int>(rng() % 16);
    auto model = fixture::RandomModel(v, dim, 3, rng, 1.0);
    Vector h(dim);
    for (double& x : h) x = fixture::Uniform(rng, -2, 2);
    double total = 0.0;
    for (int w = 0; w < v; ++w) {
      const double p = model.Probability(h, w);
      EXPECT_NEAR(std::log(p), model.LogProb(h, w), 1e-12);
      total += p;
    }
    EXPECT_NEAR(total, 1.0, 1e-9) << "vocab " << v;
  }
}

TEST(HierarchicalSoftmax, SingleWordConvention) {
  EmbeddingModel model(Vocabulary::FromEntries({{"a", 3}}, 1), 2, 1);
  EXPECT_EQ(model.Probability(Vector(2, 0.0), 0), 0.5);
}

TEST(HierarchicalSoftmax, NextWordDistributionSumsToOne) {
  std::mt19937_64 rng(2);
  auto model = fixture::RandomModel(12, 5, 3, rng);
  auto p = model.NextWordDistribution("doc", {"w1", "unknown", "w3"});
  EXPECT_NEAR(std::accumulate(p.begin(), p.end(), 0.0), 1.0, 1e-12);
  EXPECT_THROW(model.NextWordDistribution("missing", {}), Error);
}

TEST(PvdmGradient, MatchesCentralDifferences) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    const int v = 2 + static_cast<int>(rng() % 20);
    const int dim = 1 + static_cast<int>(rng() % 8);
    const int ctx = 1 + static_cast<int>(rng() % 4);
    auto model = fixture::RandomModel(v, dim, ctx, rng);
    std::vector<int> context;
    const int len = static_cast<int>(rng() % (ctx + 1));
    for (int i = 0; i < len; ++i) context.push_back(static_cast<int>(rng() % v));
    const int target = static_cast<int>(rng() % v);
    EXPECT_LT(fixture::PvdmGradientError(model, context, target), 1e-4) << "trial " << trial;
  }
}

TEST(PvdmGradient, LossIsNegativeLogProb) {
  std::mt19937_64 rng(4);
  auto model = fixture::RandomModel(9, 4, 2, rng);
  const std::vector<int> ctx = {1, 2};
  const auto doc = model.doc_vector(0);
  const auto g = ComputePvdmGradient(model, doc, ctx, 5);
  EXPECT_NEAR(g.loss, -model.LogProb(model.Projection(doc, ctx), 5), 1e-12);
}

std::vector<std::string> Alternating(int n) {
  std::vector<std::string> t;
  for (int i = 0; i < n; ++i) t.push_back(i % 2 ? "b" : "a");
  return t;
}

TEST(TrainPvdm, LearnsAlternation) {
  TrainParams p;
  p.dim = 10;
  p.context_n = 1;
  p.epochs = 50;
  auto result = TrainPvdm({Doc("alt", Alternating(100))}, p);
  const auto& m = result.model;
  auto dist = m.NextWordDistribution("alt", {"b", "a"});
  EXPECT_GE(dist[*m.vocab().Find("b")], 0.9);
  dist = m.NextWordDistribution("alt", {"a", "b"});
  EXPECT_GE(dist[*m.vocab().Find("a")], 0.9);
  ASSERT_EQ(result.report.epoch_mean_log_prob.size(), 50u);
  EXPECT_GT(result.report.epoch_mean_log_prob.back(),
            result.report.epoch_mean_log_prob.front());
}

TEST(TrainPvdm, SeparatesDisjointVocabularies) {
  std::mt19937_64 rng(8);
  auto text = [&](char prefix) {
    std::vector<std::string> t;
    for (int i = 0; i < 200; ++i) t.push_back(std::string(1, prefix) + std::to_string(rng() % 6));
    return t;
  };
  const auto one = text('x');
  const auto two = text('y');
  TrainParams p;
  p.dim = 8;
  p.context_n = 3;
  p.epochs = 30;
  auto m = TrainPvdm({Doc("d1", one), Doc("d2", two), Doc("d1b", one)}, p).model;
  EXPECT_LT(Cosine(m.DocVector("d1"), m.DocVector("d2")),
            Cosine(m.DocVector("d1"), m.DocVector("d1b")));
}

std::vector<Document> SmallSynthetic(int n_docs) {
  auto spec = SyntheticSpec::Default();
  spec.n_docs = n_docs;
  auto corpus = GenerateSynthetic(spec);
  return corpus.docs;
}

TEST(TrainPvdm, SequentialModeIsBitwiseDeterministic) {
  auto docs = SmallSynthetic(60);
  TrainParams p;
  p.dim = 12;
  p.epochs = 3;
  p.rng_seed = 5;
  auto a = TrainPvdm(docs, p).model;
  auto b = TrainPvdm(docs, p).model;
  EXPECT_TRUE(a == b);
  EXPECT_EQ(a.Serialize(), b.Serialize());
  p.rng_seed = 6;
  EXPECT_FALSE(a == TrainPvdm(docs, p).model);
}

TEST(TrainPvdm, ThreadedModeRuns) {
  auto docs = SmallSynthetic(60);
  TrainParams p;
  p.dim = 12;
  p.epochs = 2;
  p.threads = 3;
  auto m = TrainPvdm(docs, p).model;
  EXPECT_EQ(m.doc_count(), 60);
}

TEST(TrainPvdm, RejectsUntrainableCorpus) {
  TrainParams p;
  p.dim = 4;
  EXPECT_THROW(TrainPvdm({}, p), Error);
  EXPECT_THROW(TrainPvdm({Doc("one", {"a"})}, p), Error);
  p.dim = 0;
  EXPECT_THROW(TrainPvdm({Doc("d", Alternating(10))}, p), Error);
}

TEST(TrainPvdm, SkipsShortDocuments) {
  TrainParams p;
  p.dim = 4;
  p.epochs = 1;
  auto r = TrainPvdm({Doc("long", Alternating(10)), Doc("short", {"a"})}, p);
  EXPECT_EQ(r.report.skipped_docs, 1);
  EXPECT_FALSE(r.model.HasDoc("short"));
}

TEST(InferDocVector, RecoversTrainingDocuments) {
  auto docs = SmallSynthetic(300);
  TrainParams p;
  p.dim = 50;
  p.epochs = 20;
  auto m = TrainPvdm(docs, p).model;
  double worst = 1.0;
  for (int i = 0; i < 20; ++i) {
    const auto& d = docs[static_cast<std::size_t>(i * 15)];
    worst = std::min(worst, Cosine(InferDocVector(m, d.tokens, p), m.DocVector(d.doc_id)));
  }
  EXPECT_GE(worst, 0.6);
}

TEST(InferDocVector, DeterministicAndRejectsUnknownTokens) {
  auto m = TrainPvdm({Doc("alt", Alternating(40))}, [] {
             TrainParams p;
             p.dim = 6;
             p.epochs = 5;
             return p;
           }()).model;
  TrainParams p;
  p.dim = 6;
  p.epochs = 5;
  EXPECT_EQ(InferDocVector(m, {"a", "b", "a"}, p), InferDocVector(m, {"a", "b", "a"}, p));
  EXPECT_THROW(InferDocVector(m, {"zzz", "qqq"}, p), Error);
}

TEST(EmbeddingModel, SerializationRoundTrip) {
  std::mt19937_64 rng(31);
  auto m = fixture::RandomModel(15, 7, 3, rng);
  const auto text = m.Serialize();
  auto back = EmbeddingModel::Deserialize(text);
  EXPECT_EQ(back.Serialize(), text);
  EXPECT_TRUE(back == m);
  EXPECT_EQ(back.vocab().entry(3).token, m.vocab().entry(3).token);
  EXPECT_THROW(EmbeddingModel::Deserialize("pvdm 2 1 1 0\nw a"), Error);
}

TEST(EmbeddingModel, UnknownLookupsThrow) {
  std::mt19937_64 rng(1);
  auto m = fixture::RandomModel(3, 2, 1, rng);
  EXPECT_THROW(m.DocVector("nope"), Error);
  EXPECT_THROW(m.WordVector("nope"), Error);
}

TEST(NearestWords, SelfIsNearest) {
  std::mt19937_64 rng(12);
  auto m = fixture::RandomModel(20, 6, 1, rng);
  auto q = m.WordVector("w7");
  auto top = NearestWords(m, q, 3);
  ASSERT_EQ(top.size(), 3u);
  EXPECT_EQ(top[0].first, "w7");
  EXPECT_NEAR(top[0].second, 1.0, 1e-12);
}

}  // namespace
}  // namespace stressnet
