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

#include "stressnet/evaluate.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>

#include <fmt/format.h>

namespace stressnet {
namespace {

void CheckBinary(std::span<const int> labels, std::span<const double> scores) {
  if (labels.size() != scores.size()) {
    throw Error(fmt::format("{} labels but {} scores", labels.size(),
                            scores.size()));
  }
  if (labels.empty()) throw Error("no cases to evaluate");
  for (int y : labels) {
    if (y != 0 && y != 1) throw Error("labels must be 0 or 1");
  }
}

bool BothClasses(std::span<const int> labels) {
  bool pos = false, neg = false;
  for (int y : labels) (y ? pos : neg) = true;
  return pos && neg;
}

}  // namespace

Preference::Preference(double mu) : mu_(mu) {
  if (!(mu > 0.0 && mu < 1.0)) {
    throw Error(fmt::format("preference mu must lie in (0, 1), got {}", mu));
  }
}

ConfusionMatrix Confusion(std::span<const int> labels,
                          std::span<const double> scores, double threshold) {
  CheckBinary(labels, scores);
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const bool pred = scores[i] >= threshold;
    if (labels[i] == 1) {
      (pred ? cm.tp : cm.fn) += 1.0;
    } else {
      (pred ? cm.fp : cm.tn) += 1.0;
    }
  }
  return cm;
}

double BaselineLoss(double p_pos, Preference pref) {
  const double mu = pref.mu();
  return std::min(mu * p_pos, (1.0 - mu) * (1.0 - p_pos));
}

double ModelLoss(const ConfusionMatrix& cm, Preference pref) {
  const double total = cm.total();
  if (!(total > 0.0)) throw Error("confusion matrix is empty");
  const double mu = pref.mu();
  return mu * cm.fn / total + (1.0 - mu) * cm.fp / total;
}

double AbsoluteUsefulness(const ConfusionMatrix& cm, Preference pref) {
  return BaselineLoss(cm.positive_rate(), pref) - ModelLoss(cm, pref);
}

double RelativeUsefulness(const ConfusionMatrix& cm, Preference pref) {
  const double baseline = BaselineLoss(cm.positive_rate(), pref);
  if (!(baseline > 0.0)) {
    throw Error("relative usefulness undefined: baseline loss is zero");
  }
  return (baseline - ModelLoss(cm, pref)) / baseline;
}

double FBeta(const ConfusionMatrix& cm, double beta) {
  if (!(cm.tp + cm.fp > 0.0)) throw Error("precision undefined: no positive predictions");
  if (!(cm.tp + cm.fn > 0.0)) throw Error("recall undefined: no positive observations");
  const double precision = cm.tp / (cm.tp + cm.fp);
  const double recall = cm.tp / (cm.tp + cm.fn);
  const double b2 = beta * beta;
  const double denom = b2 * precision + recall;
  if (denom == 0.0) return 0.0;
  return (1.0 + b2) * precision * recall / denom;
}

double MuToBeta(Preference pref) { return pref.mu() / (1.0 - pref.mu()); }

double RocAuc(std::span<const int> labels, std::span<const double> scores) {
  CheckBinary(labels, scores);
  if (!BothClasses(labels)) throw Error("AUC needs both classes");
  std::vector<std::size_t> order(labels.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  // Mid-ranks over tie blocks; Mann-Whitney U of the positives.
  double positive_rank_sum = 0.0;
  double positives = 0.0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
    const double mid_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) {
      if (labels[order[k]] == 1) {
        positive_rank_sum += mid_rank;
        positives += 1.0;
      }
    }
    i = j;
  }
  const double negatives = static_cast<double>(labels.size()) - positives;
  return (positive_rank_sum - positives * (positives + 1.0) / 2.0) /
         (positives * negatives);
}

double OptimizeThreshold(std::span<const int> labels,
                         std::span<const double> scores, Preference pref) {
  CheckBinary(labels, scores);
  if (!BothClasses(labels)) throw Error("threshold search needs both classes");
  std::vector<std::size_t> order(labels.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  ConfusionMatrix cm;  // everything predicted positive at -inf
  for (int y : labels) (y ? cm.tp : cm.fp) += 1.0;

  double best_threshold = -std::numeric_limits<double>::infinity();
  double best = RelativeUsefulness(cm, pref);
  std::size_t i = 0;
  while (i < order.size()) {
    // Move the tie block at scores[order[i]] to the negative side.
    const double value = scores[order[i]];
    std::size_t j = i;
    for (; j < order.size() && scores[order[j]] == value; ++j) {
      if (labels[order[j]]) {
        cm.tp -= 1.0;
        cm.fn += 1.0;
      } else {
        cm.fp -= 1.0;
        cm.tn += 1.0;
      }
    }
    const double threshold = j < order.size()
                                 ? value + (scores[order[j]] - value) / 2.0
                                 : std::numeric_limits<double>::infinity();
    const double ur = RelativeUsefulness(cm, pref);
    if (ur > best) {
      best = ur;
      best_threshold = threshold;
    }
    i = j;
  }
  return best_threshold;
}

std::span<const ReferenceRow> ReferenceTable() {
  static const ReferenceRow kRows[] = {
      {0.1, -33.34, 2.47, 0.070, 0.03, {18823, 2249, 0, 2}},
      {0.2, -14.41, 1.08, 0.016, 0.01, {18823, 2249, 1, 2}},
      {0.3, -8.094, 0.62, 0.023, 0.01, {18819, 2242, 4, 8}},
      {0.4, -4.937, 0.39, 0.036, 0.01, {18807, 2225, 16, 26}},
      {0.5, -3.044, 0.25, 0.037, 0.02, {18787, 2208, 36, 43}},
      {0.6, -1.781, 0.16, 0.066, 0.02, {18694, 2142, 130, 109}},
      {0.7, -0.879, 0.09, 0.114, 0.02, {18455, 2023, 368, 228}},
      {0.8, -0.203, 0.04, 0.229, 0.03, {17503, 1740, 1321, 511}},
      {0.85, 0.147, 0.02, 0.397, 0.05, {15462, 1331, 3362, 919}},
      {0.9, 0.271, 0.01, 0.713, 0.03, {10306, 577, 8517, 1673}},
      {0.95, 0.146, 0.01, 0.934, 0.01, {4873, 112, 13950, 2139}},
  };
  return kRows;
}

std::vector<double> DefaultMuGrid() {
  std::vector<double> grid;
  for (const auto& row : ReferenceTable()) grid.push_back(row.mu);
  return grid;
}

std::vector<int> AssignFolds(std::span<const CvCase> cases, int folds,
                             std::uint64_t seed, int max_redraws) {
  if (folds < 3) throw Error("cross-validation needs at least 3 folds");
  std::map<std::string, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < cases.size(); ++i) groups[cases[i].group].push_back(i);
  if (static_cast<int>(groups.size()) < folds) {
    throw Error(fmt::format("{} groups cannot fill {} folds", groups.size(), folds));
  }
  std::vector<const std::vector<std::size_t>*> members;
  for (const auto& [name, idx] : groups) members.push_back(&idx);

  std::mt19937_64 rng(seed);
  std::vector<int> fold_of(cases.size(), -1);
  for (int attempt = 0; attempt < max_redraws; ++attempt) {
    auto order = members;
    for (std::size_t i = order.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(UnitInterval(rng()) * i);
      std::swap(order[i - 1], order[j]);
    }
    std::vector<int> pos(folds, 0), neg(folds, 0);
    for (std::size_t g = 0; g < order.size(); ++g) {
      const int fold = static_cast<int>(g % folds);
      for (std::size_t i : *order[g]) {
        fold_of[i] = fold;
        (cases[i].label ? pos : neg)[fold] += 1;
      }
    }
    bool ok = true;
    for (int f = 0; f < folds; ++f) ok = ok && pos[f] > 0 && neg[f] > 0;
    if (ok) return fold_of;
  }
  throw Error(fmt::format(
      "could not draw {} folds with both classes in {} attempts", folds,
      max_redraws));
}

double Mean(std::span<const double> values) {
  if (values.empty()) return 0.0;
  return std::accumulate(values.begin(), values.end(), 0.0) /
         static_cast<double>(values.size());
}

double SampleStdDev(std::span<const double> values) {
  if (values.size() < 2) return 0.0;
  const double m = Mean(values);
  double ss = 0.0;
  for (double v : values) ss += (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

CvReport CrossValidate(std::span<const CvCase> cases, const CvOptions& options) {
  if (options.mu_grid.empty()) throw Error("mu grid is empty");
  if (options.candidates.empty()) throw Error("no classifier candidates");
  for (double mu : options.mu_grid) (void)Preference(mu);
  CvReport report;
  report.fold_of_case =
      AssignFolds(cases, options.folds, options.seed, options.max_redraws);
  const int k = options.folds;

  for (int test = 0; test < k; ++test) {
    const int validation = (test + 1) % k;
    TrainingSet train;
    std::vector<int> val_labels, test_labels;
    std::vector<std::size_t> val_idx, test_idx;
    for (std::size_t i = 0; i < cases.size(); ++i) {
      const int f = report.fold_of_case[i];
      if (f == test) {
        test_idx.push_back(i);
        test_labels.push_back(cases[i].label);
      } else if (f == validation) {
        val_idx.push_back(i);
        val_labels.push_back(cases[i].label);
      } else {
        train.cases.push_back({cases[i].features, cases[i].label});
      }
    }

    std::vector<std::vector<double>> val_scores, test_scores;
    for (std::size_t c = 0; c < options.candidates.size(); ++c) {
      ClassifierParams params = options.candidates[c];
      params.seed += static_cast<std::uint64_t>(test) * 7919;
      const Classifier model = TrainClassifier(train, params);
      auto& vs = val_scores.emplace_back();
      for (std::size_t i : val_idx) vs.push_back(model.Score(cases[i].features));
      auto& ts = test_scores.emplace_back();
      for (std::size_t i : test_idx) ts.push_back(model.Score(cases[i].features));
    }

    FoldResult fold;
    fold.test_fold = test;
    fold.validation_fold = validation;
    {
      std::size_t best = 0;
      double best_auc = -1.0;
      for (std::size_t c = 0; c < val_scores.size(); ++c) {
        const double auc = RocAuc(val_labels, val_scores[c]);
        if (auc > best_auc) {
          best_auc = auc;
          best = c;
        }
      }
      fold.auc = RocAuc(test_labels, test_scores[best]);
    }
    for (double mu : options.mu_grid) {
      const Preference pref(mu);
      MuFoldResult r;
      r.mu = mu;
      double best_val = -std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < val_scores.size(); ++c) {
        const double t = OptimizeThreshold(val_labels, val_scores[c], pref);
        const double ur =
            RelativeUsefulness(Confusion(val_labels, val_scores[c], t), pref);
        if (ur > best_val) {
          best_val = ur;
          r.candidate = c;
          r.threshold = t;
        }
      }
      r.cm = Confusion(test_labels, test_scores[r.candidate], r.threshold);
      r.ur = RelativeUsefulness(r.cm, pref);
      r.f = r.cm.tp + r.cm.fp > 0.0 ? FBeta(r.cm, MuToBeta(pref)) : 0.0;
      fold.by_mu.push_back(r);
    }
    report.folds.push_back(std::move(fold));
  }

  std::vector<double> aucs;
  for (const auto& f : report.folds) aucs.push_back(f.auc);
  report.auc_mean = Mean(aucs);
  report.auc_sd = SampleStdDev(aucs);

  for (std::size_t m = 0; m < options.mu_grid.size(); ++m) {
    const Preference pref(options.mu_grid[m]);
    MuSummary s;
    s.mu = pref.mu();
    std::vector<double> urs, fs;
    for (const auto& f : report.folds) {
      const auto& r = f.by_mu[m];
      urs.push_back(r.ur);
      fs.push_back(r.f);
      s.mean_cm.tn += r.cm.tn / k;
      s.mean_cm.fn += r.cm.fn / k;
      s.mean_cm.fp += r.cm.fp / k;
      s.mean_cm.tp += r.cm.tp / k;
    }
    s.ur_mean = Mean(urs);
    s.ur_sd = SampleStdDev(urs);
    s.f_mean = Mean(fs);
    s.f_sd = SampleStdDev(fs);
    s.ur_of_mean_cm = RelativeUsefulness(s.mean_cm, pref);
    s.f_of_mean_cm = s.mean_cm.tp + s.mean_cm.fp > 0.0
                         ? FBeta(s.mean_cm, MuToBeta(pref))
                         : 0.0;
    report.summary.push_back(s);
  }
  return report;
}

std::string CvReport::SerializeTable() const {
  std::string out = "mu,Ur_mean,Ur_sd,F_mean,F_sd,TN,FN,FP,TP\n";
  for (const auto& s : summary) {
    out += fmt::format("{},{},{},{},{},{},{},{},{}\n", FormatReal(s.mu),
                       FormatReal(s.ur_mean), FormatReal(s.ur_sd),
                       FormatReal(s.f_mean), FormatReal(s.f_sd),
                       FormatReal(s.mean_cm.tn), FormatReal(s.mean_cm.fn),
                       FormatReal(s.mean_cm.fp), FormatReal(s.mean_cm.tp));
  }
  return out;
}

std::string CvReport::SerializeMeanCmMetrics() const {
  std::string out = "mu,Ur_of_mean_cm,F_of_mean_cm\n";
  for (const auto& s : summary) {
    out += fmt::format("{},{},{}\n", FormatReal(s.mu),
                       FormatReal(s.ur_of_mean_cm), FormatReal(s.f_of_mean_cm));
  }
  return out;
}

std::string CvReport::SerializeAuc() const {
  std::string out = "fold,auc\n";
  for (const auto& f : folds) {
    out += fmt::format("{},{}\n", f.test_fold, FormatReal(f.auc));
  }
  out += fmt::format("mean,{}\nsd,{}\n", FormatReal(auc_mean), FormatReal(auc_sd));
  return out;
}

}  // namespace stressnet
