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

#ifndef STRESSNET_EVALUATE_H_
#define STRESSNET_EVALUATE_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "stressnet/classifier.h"
#include "stressnet/common.h"

namespace stressnet {

// Counts are real-valued; fold averages are fractional.
struct ConfusionMatrix {
  double tn = 0.0;
  double fn = 0.0;
  double fp = 0.0;
  double tp = 0.0;

  double total() const { return tn + fn + fp + tp; }
  double positive_rate() const { return (fn + tp) / total(); }

  friend bool operator==(const ConfusionMatrix&,
                         const ConfusionMatrix&) = default;
};

// Error preference between missed events and false alarms, 0 < mu < 1.
class Preference {
 public:
  explicit Preference(double mu);
  double mu() const { return mu_; }

 private:
  double mu_;
};

// Predicts positive iff score >= threshold.
ConfusionMatrix Confusion(std::span<const int> labels,
                          std::span<const double> scores, double threshold);

// L_b = min(mu p(obs=1), (1 - mu) p(obs=0))
double BaselineLoss(double p_pos, Preference pref);
// L_m = mu p(FN) + (1 - mu) p(FP)
double ModelLoss(const ConfusionMatrix& cm, Preference pref);
// U_a = L_b - L_m
double AbsoluteUsefulness(const ConfusionMatrix& cm, Preference pref);
// U_r = (L_b - L_m) / L_b; throws Error when L_b is zero.
double RelativeUsefulness(const ConfusionMatrix& cm, Preference pref);

// Throws Error when precision or recall is undefined.
double FBeta(const ConfusionMatrix& cm, double beta);
double MuToBeta(Preference pref);

// Probability that a random positive outscores a random negative, ties
// counting one half. Throws Error unless both classes are present.
double RocAuc(std::span<const int> labels, std::span<const double> scores);

// Searches -inf, the midpoints between adjacent distinct scores, and +inf
// for the threshold with the highest U_r; the lowest threshold wins ties.
double OptimizeThreshold(std::span<const int> labels,
                         std::span<const double> scores, Preference pref);

// Published reference results: mean test-fold confusion matrices and metric
// means per preference.
struct ReferenceRow {
  double mu;
  double ur;
  double ur_sd;
  double f;
  double f_sd;
  ConfusionMatrix cm;
};
std::span<const ReferenceRow> ReferenceTable();

struct CvCase {
  std::string group;  // cases sharing a group never straddle folds
  Vector features;
  int label = 0;
};

struct CvOptions {
  int folds = 10;
  std::vector<double> mu_grid;
  std::uint64_t seed = 1;
  // Classifier settings searched on the validation fold.
  std::vector<ClassifierParams> candidates = {ClassifierParams{}};
  int max_redraws = 100;
};

std::vector<double> DefaultMuGrid();

// Fold index per case. Groups are shuffled and dealt round-robin, so fold
// sizes in groups differ by at most one. Redraws until every fold holds
// both classes; throws Error after `max_redraws` failures.
std::vector<int> AssignFolds(std::span<const CvCase> cases, int folds,
                             std::uint64_t seed, int max_redraws);

struct MuFoldResult {
  double mu = 0.0;
  std::size_t candidate = 0;
  double threshold = 0.0;
  ConfusionMatrix cm;
  double ur = 0.0;
  double f = 0.0;  // zero when precision is undefined
};

struct FoldResult {
  int test_fold = 0;
  int validation_fold = 0;
  // Test-fold AUC of the candidate with the best validation AUC.
  double auc = 0.0;
  std::vector<MuFoldResult> by_mu;
};

struct MuSummary {
  double mu = 0.0;
  double ur_mean = 0.0;
  double ur_sd = 0.0;
  double f_mean = 0.0;
  double f_sd = 0.0;
  ConfusionMatrix mean_cm;
  // Metrics recomputed from mean_cm, which differ from the means above.
  double ur_of_mean_cm = 0.0;
  double f_of_mean_cm = 0.0;
};

struct CvReport {
  std::vector<int> fold_of_case;
  std::vector<FoldResult> folds;
  std::vector<MuSummary> summary;
  double auc_mean = 0.0;
  double auc_sd = 0.0;

  // `mu,Ur_mean,Ur_sd,F_mean,F_sd,TN,FN,FP,TP`
  std::string SerializeTable() const;
  // `mu,Ur_of_mean_cm,F_of_mean_cm`
  std::string SerializeMeanCmMetrics() const;
  // `fold,auc` rows followed by `mean` and `sd`.
  std::string SerializeAuc() const;
};

// For each fold i: test on fold i, validate on fold i+1 (mod k), train on
// the rest. Per mu, the candidate and threshold with the best validation
// U_r are applied to the test fold. Standard deviations are sample (n-1).
CvReport CrossValidate(std::span<const CvCase> cases, const CvOptions& options);

double Mean(std::span<const double> values);
double SampleStdDev(std::span<const double> values);

}  // namespace stressnet

#endif  // STRESSNET_EVALUATE_H_
