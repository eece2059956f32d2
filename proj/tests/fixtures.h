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

// Random model builders and finite-difference checks shared by the unit
// and acceptance suites.

#ifndef STRESSNET_TESTS_FIXTURES_H_
#define STRESSNET_TESTS_FIXTURES_H_

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "stressnet/classifier.h"
#include "stressnet/pvdm.h"

namespace stressnet::fixture {

inline double Uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * UnitInterval(rng());
}

// Vocabulary of `vocab_size` words with random counts, every parameter
// drawn uniform in +-scale, and one document "doc".
inline EmbeddingModel RandomModel(int vocab_size, int dim, int context_n,
                                  std::mt19937_64& rng, double scale = 0.5) {
  std::vector<VocabEntry> entries;
  for (int i = 0; i < vocab_size; ++i) {
    entries.push_back({"w" + std::to_string(i), 1 + static_cast<std::int64_t>(rng() % 50)});
  }
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    if (a.count != b.count) return a.count > b.count;
    return a.token < b.token;
  });
  EmbeddingModel model(Vocabulary::FromEntries(entries, 1), dim, context_n);
  const int doc = model.AddDoc("doc");
  auto fill = [&](std::span<double> v) {
    for (double& x : v) x = Uniform(rng, -scale, scale);
  };
  for (int w = 0; w < vocab_size; ++w) fill(model.word_vector(w));
  for (int n = 0; n < model.tree().node_count(); ++n) fill(model.node_weights(n));
  fill(model.doc_vector(doc));
  return model;
}

inline double RelativeError(double a, double n) {
  return std::abs(a - n) / std::max({std::abs(a), std::abs(n), 1e-6});
}

// Largest relative error between ComputePvdmGradient and central
// differences over the document vector, every context word vector and
// every node on the target's path.
inline double PvdmGradientError(EmbeddingModel& model, std::vector<int> context,
                                int target, double step = 1e-5) {
  Vector doc(model.doc_vector(0).begin(), model.doc_vector(0).end());
  const auto grad = ComputePvdmGradient(model, doc, context, target);
  auto loss = [&]() { return ComputePvdmGradient(model, doc, context, target).loss; };
  double worst = 0.0;
  auto probe = [&](double& x, double analytic) {
    const double keep = x;
    x = keep + step;
    const double up = loss();
    x = keep - step;
    const double down = loss();
    x = keep;
    worst = std::max(worst, RelativeError(analytic, (up - down) / (2 * step)));
  };
  for (std::size_t i = 0; i < doc.size(); ++i) probe(doc[i], grad.doc[i]);
  for (const auto& [w, g] : grad.words) {
    auto v = model.word_vector(w);
    for (std::size_t i = 0; i < v.size(); ++i) probe(v[i], g[i]);
  }
  for (const auto& [n, g] : grad.nodes) {
    auto v = model.node_weights(n);
    for (std::size_t i = 0; i < v.size(); ++i) probe(v[i], g[i]);
  }
  return worst;
}

inline Classifier RandomClassifier(int in, int hidden, std::mt19937_64& rng,
                                   double scale = 1.0) {
  Classifier c(in, hidden);
  for (std::size_t i = 0; i < c.parameter_count(); ++i) {
    c.parameter(i) = Uniform(rng, -scale, scale);
  }
  return c;
}

}  // namespace stressnet::fixture

#endif  // STRESSNET_TESTS_FIXTURES_H_
