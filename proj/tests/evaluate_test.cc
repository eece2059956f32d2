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
#include <limits>
#include <map>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "oracles.h"
#include "stressnet/evaluate.h"

namespace stressnet {
namespace {

const ReferenceRow& Row(double mu) {
  for (const auto& r : ReferenceTable()) {
    if (r.mu == mu) return r;
  }
  throw Error("no such row");
}

TEST(Confusion, SmallExampleAndDegenerateThreshold) {
  const std::vector<int> labels = {1, 0};
  const std::vector<double> scores = {0.9, 0.1};
  EXPECT_EQ(Confusion(labels, scores, 0.5), (ConfusionMatrix{1, 0, 0, 1}));
  const auto all = Confusion(labels, scores, 0.0);
  EXPECT_EQ(all.fp + all.tp, 2.0);
  EXPECT_THROW(Confusion(labels, std::vector<double>{0.1}, 0.5), Error);
}

TEST(Confusion, ScoreAtThresholdIsPositive) {
  const std::vector<int> labels = {1};
  const std::vector<double> scores = {0.5};
  EXPECT_EQ(Confusion(labels, scores, 0.5).tp, 1.0);
}

TEST(Confusion, MatchesCountOracle) {
  std::mt19937_64 rng(1);
  std::vector<int> labels(200);
  std::vector<double> scores(200);
  for (int i = 0; i < 200; ++i) {
    labels[i] = static_cast<int>(rng() % 2);
    scores[i] = static_cast<double>(rng() % 50) / 50.0;
  }
  for (double t : {0.0, 0.2, 0.5, 0.98, 1.0}) {
    const auto c = Confusion(labels, scores, t);
    const auto o = oracle::CountConfusion(labels, scores, t);
    EXPECT_EQ(c, (ConfusionMatrix{o.tn, o.fn, o.fp, o.tp}));
  }
}

TEST(Losses, BaselineExamples) {
  EXPECT_NEAR(BaselineLoss(0.1068, Preference(0.9)), 0.0893, 5e-5);
  EXPECT_DOUBLE_EQ(BaselineLoss(0.5, Preference(0.5)), 0.25);
  EXPECT_EQ(BaselineLoss(0.0, Preference(0.7)), 0.0);
  EXPECT_LT(BaselineLoss(1e-9, Preference(0.7)), 1e-9);
}

TEST(Losses, ModelLossOnTableRow) {
  EXPECT_NEAR(ModelLoss(Row(0.9).cm, Preference(0.9)), 0.0651, 5e-5);
  EXPECT_EQ(ModelLoss({10, 0, 0, 5}, Preference(0.9)), 0.0);
}

TEST(Preference, RejectsBoundaries) {
  EXPECT_THROW(Preference(1.0), Error);
  EXPECT_THROW(Preference(0.0), Error);
  EXPECT_THROW(Preference(std::numeric_limits<double>::quiet_NaN()), Error);
}

TEST(Usefulness, TableRows) {
  EXPECT_NEAR(RelativeUsefulness(Row(0.9).cm, Preference(0.9)), 0.271, 0.001);
  EXPECT_NEAR(RelativeUsefulness(Row(0.95).cm, Preference(0.95)), 0.146, 0.001);
  EXPECT_EQ(RelativeUsefulness({10, 0, 0, 5}, Preference(0.3)), 1.0);
  EXPECT_THROW(RelativeUsefulness({10, 0, 3, 0}, Preference(0.3)), Error);
}

// Low-mu rows of the reference table are not consistent with their own
// mean confusion matrices; the recomputed value is positive.
TEST(Usefulness, LowMuRowsDoNotReproduce) {
  const auto& r = Row(0.5);
  const double ur = RelativeUsefulness(r.cm, Preference(0.5));
  EXPECT_NEAR(ur, 0.003, 0.002);
  EXPECT_GT(std::abs(ur - r.ur), 3.0);
}

TEST(FBeta, TableRowsAndIdentity) {
  EXPECT_NEAR(FBeta(Row(0.9).cm, MuToBeta(Preference(0.9))), 0.713, 0.001);
  EXPECT_NEAR(FBeta(Row(0.95).cm, MuToBeta(Preference(0.95))), 0.934, 0.001);
  const ConfusionMatrix eq{5, 3, 3, 9};  // P = R = 0.75
  for (double beta : {0.1, 1.0, 9.0, 19.0}) EXPECT_NEAR(FBeta(eq, beta), 0.75, 1e-15);
  EXPECT_THROW(FBeta({5, 3, 0, 0}, 1.0), Error);
  EXPECT_THROW(FBeta({5, 0, 3, 0}, 1.0), Error);
}

TEST(MuToBeta, Values) {
  EXPECT_DOUBLE_EQ(MuToBeta(Preference(0.5)), 1.0);
  EXPECT_DOUBLE_EQ(MuToBeta(Preference(0.9)), 9.0);
  EXPECT_NEAR(MuToBeta(Preference(0.95)), 19.0, 1e-12);
}

ConfusionMatrix RandomCm(std::mt19937_64& rng) {
  ConfusionMatrix cm;
  cm.tn = 1 + static_cast<double>(rng() % 500);
  cm.fn = static_cast<double>(rng() % 100);
  cm.fp = static_cast<double>(rng() % 200);
  cm.tp = 1 + static_cast<double>(rng() % 100);
  return cm;
}

TEST(Usefulness, AlgebraicProperties) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 500; ++i) {
    auto cm = RandomCm(rng);
    if (i % 10 == 0) cm.fn = cm.fp = 0;
    const Preference pref(0.05 + 0.9 * UnitInterval(rng()));
    const double lb = BaselineLoss(cm.positive_rate(), pref);
    const double ur = RelativeUsefulness(cm, pref);
    const double ua = AbsoluteUsefulness(cm, pref);
    EXPECT_LE(ur, 1.0);
    EXPECT_EQ(ur == 1.0, cm.fn == 0 && cm.fp == 0);
    EXPECT_NEAR(ua, lb - ModelLoss(cm, pref), 1e-15);
    EXPECT_NEAR(ur * lb, ua, 1e-12);
    EXPECT_NEAR(ur, oracle::UsefulnessFromCounts({cm.tn, cm.fn, cm.fp, cm.tp}, pref.mu()), 1e-12);
  }
}

TEST(Usefulness, ScaleInvariance) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const auto cm = RandomCm(rng);
    const double c = 0.01 + 100 * UnitInterval(rng());
    const ConfusionMatrix scaled{cm.tn * c, cm.fn * c, cm.fp * c, cm.tp * c};
    const Preference pref(0.9);
    EXPECT_NEAR(RelativeUsefulness(cm, pref), RelativeUsefulness(scaled, pref), 1e-9);
    if (cm.tp + cm.fp > 0) EXPECT_NEAR(FBeta(cm, 9), FBeta(scaled, 9), 1e-12);
  }
}

TEST(RocAuc, Basics) {
  const std::vector<int> labels = {0, 0, 1, 1};
  EXPECT_EQ(RocAuc(labels, std::vector<double>{0.1, 0.2, 0.8, 0.9}), 1.0);
  EXPECT_EQ(RocAuc(labels, std::vector<double>{0.5, 0.5, 0.5, 0.5}), 0.5);
  EXPECT_THROW(RocAuc(std::vector<int>{1, 1}, std::vector<double>{0.1, 0.2}), Error);
}

TEST(RocAuc, MatchesPairwiseOracle) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<int> labels(50);
    std::vector<double> scores(50);
    for (int i = 0; i < 50; ++i) {
      labels[i] = static_cast<int>(rng() % 2);
      scores[i] = static_cast<double>(rng() % 12);
    }
    labels[0] = 0;
    labels[1] = 1;
    EXPECT_NEAR(RocAuc(labels, scores), oracle::PairwiseAuc(labels, scores), 1e-12);
  }
}

TEST(OptimizeThreshold, SeparatedExample) {
  const std::vector<int> labels = {0, 0, 1, 1};
  const std::vector<double> scores = {0.1, 0.4, 0.6, 0.9};
  const double t = OptimizeThreshold(labels, scores, Preference(0.9));
  EXPECT_GT(t, 0.4);
  EXPECT_LE(t, 0.6);
  EXPECT_EQ(RelativeUsefulness(Confusion(labels, scores, t), Preference(0.9)), 1.0);
  EXPECT_THROW(OptimizeThreshold(std::vector<int>{0, 0}, std::vector<double>{0.1, 0.2}, Preference(0.5)), Error);
}

TEST(OptimizeThreshold, BeatsEveryCandidate) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int> labels(100);
    std::vector<double> scores(100);
    for (int i = 0; i < 100; ++i) {
      labels[i] = static_cast<int>(rng() % 2);
      scores[i] = 0.3 * labels[i] + 0.7 * UnitInterval(rng());
    }
    const double mu = 0.1 + 0.8 * UnitInterval(rng());
    const double t = OptimizeThreshold(labels, scores, Preference(mu));
    const double best = oracle::UsefulnessFromCounts(oracle::CountConfusion(labels, scores, t), mu);
    std::set<double> distinct(scores.begin(), scores.end());
    std::vector<double> cands = {-std::numeric_limits<double>::infinity(),
                                 std::numeric_limits<double>::infinity()};
    for (auto it = distinct.begin(); std::next(it) != distinct.end(); ++it) {
      cands.push_back((*it + *std::next(it)) / 2);
    }
    for (double c : cands) {
      EXPECT_GE(best, oracle::UsefulnessFromCounts(oracle::CountConfusion(labels, scores, c), mu) - 1e-12);
    }
  }
}

std::vector<CvCase> GaussianCases(int n, std::uint64_t seed, int per_group = 1) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise;
  std::vector<CvCase> cases;
  for (int i = 0; i < n; ++i) {
    const int label = rng() % 5 == 0 ? 1 : 0;
    cases.push_back({"g" + std::to_string(i / per_group),
                     {label * 1.5 + noise(rng), noise(rng)}, label});
  }
  return cases;
}

TEST(AssignFolds, PartitionWithBalancedSizes) {
  const auto cases = GaussianCases(1000, 1);
  const auto folds = AssignFolds(cases, 10, 7, 100);
  ASSERT_EQ(folds.size(), cases.size());
  std::vector<int> sizes(10, 0);
  for (int f : folds) {
    ASSERT_TRUE(f >= 0 && f < 10);
    ++sizes[f];
  }
  EXPECT_LE(*std::max_element(sizes.begin(), sizes.end()) -
                *std::min_element(sizes.begin(), sizes.end()), 1);
  EXPECT_EQ(folds, AssignFolds(cases, 10, 7, 100));
  EXPECT_NE(folds, AssignFolds(cases, 10, 8, 100));
}

TEST(AssignFolds, GroupsNeverStraddleFolds) {
  auto cases = GaussianCases(300, 2, 3);
  const CvCase dup = cases[10];
  for (int i = 0; i < 50; ++i) cases.push_back(dup);
  const auto folds = AssignFolds(cases, 10, 3, 100);
  std::map<std::string, std::set<int>> seen;
  for (std::size_t i = 0; i < cases.size(); ++i) seen[cases[i].group].insert(folds[i]);
  for (const auto& [g, f] : seen) EXPECT_EQ(f.size(), 1u) << g;
}

TEST(AssignFolds, FailsWhenAClassCannotReachEveryFold) {
  auto cases = GaussianCases(100, 3);
  for (auto& c : cases) c.label = 0;
  cases[0].label = 1;
  EXPECT_THROW(AssignFolds(cases, 5, 1, 100), Error);
  EXPECT_THROW(AssignFolds(cases, 2, 1, 100), Error);
}

CvOptions SmallOptions() {
  CvOptions o;
  o.folds = 5;
  o.mu_grid = {0.5, 0.9};
  o.seed = 11;
  ClassifierParams p;
  p.hidden_dim = 3;
  p.epochs = 20;
  p.learning_rate = 0.1;
  o.candidates = {p};
  return o;
}

TEST(CrossValidate, ReportShapeAndDeterminism) {
  const auto cases = GaussianCases(400, 4);
  const auto opts = SmallOptions();
  const auto a = CrossValidate(cases, opts);
  ASSERT_EQ(a.folds.size(), 5u);
  ASSERT_EQ(a.summary.size(), 2u);
  for (int i = 0; i < 5; ++i) {
    EXPECT_EQ(a.folds[i].test_fold, i);
    EXPECT_EQ(a.folds[i].validation_fold, (i + 1) % 5);
  }
  EXPECT_GT(a.auc_mean, 0.8);
  double total = 0;
  for (const auto& f : a.folds) {
    const auto& cm = f.by_mu[0].cm;
    total += cm.total();
  }
  EXPECT_EQ(total, 400.0);
  std::vector<double> urs;
  for (const auto& f : a.folds) urs.push_back(f.by_mu[1].ur);
  EXPECT_NEAR(a.summary[1].ur_mean, Mean(urs), 1e-15);
  EXPECT_NEAR(a.summary[1].ur_sd, SampleStdDev(urs), 1e-15);

  const auto b = CrossValidate(cases, opts);
  EXPECT_EQ(a.SerializeTable(), b.SerializeTable());
  EXPECT_EQ(a.SerializeAuc(), b.SerializeAuc());
  EXPECT_EQ(a.fold_of_case, b.fold_of_case);
  EXPECT_EQ(a.SerializeTable().substr(0, 34), "mu,Ur_mean,Ur_sd,F_mean,F_sd,TN,FN");
}

TEST(Stats, MeanAndSampleStdDev) {
  const std::vector<double> v = {2, 4, 4, 4, 5, 5, 7, 9};
  EXPECT_EQ(Mean(v), 5.0);
  EXPECT_NEAR(SampleStdDev(v), std::sqrt(32.0 / 7.0), 1e-15);
}

}  // namespace
}  // namespace stressnet
