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

#ifndef STRESSNET_CLASSIFIER_H_
#define STRESSNET_CLASSIFIER_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stressnet/common.h"

namespace stressnet {

struct TrainingCase {
  Vector features;
  int label = 0;
};

struct TrainingSet {
  std::vector<TrainingCase> cases;

  int input_dim() const;
  double positive_fraction() const;
};

// One hidden layer, logistic activations at hidden and output units.
class Classifier {
 public:
  Classifier() = default;
  Classifier(int input_dim, int hidden_dim);

  // Hidden-to-input weights uniform in +-1/sqrt(fan_in), biases zero.
  static Classifier RandomInit(int input_dim, int hidden_dim,
                               std::uint64_t seed);

  int input_dim() const { return input_dim_; }
  int hidden_dim() const { return hidden_dim_; }

  // Row-major hidden_dim x input_dim.
  std::vector<double>& hidden_weights() { return hidden_weights_; }
  const std::vector<double>& hidden_weights() const { return hidden_weights_; }
  std::vector<double>& hidden_bias() { return hidden_bias_; }
  const std::vector<double>& hidden_bias() const { return hidden_bias_; }
  std::vector<double>& output_weights() { return output_weights_; }
  const std::vector<double>& output_weights() const { return output_weights_; }
  double& output_bias() { return output_bias_; }
  double output_bias() const { return output_bias_; }

  // Pre-activation of the output unit.
  double Logit(std::span<const double> input) const;
  // M(V) = p(distress | V). Throws Error on dimension mismatch.
  double Score(std::span<const double> input) const;

  // Total number of trainable parameters and flat access in the order
  // hidden weights, hidden bias, output weights, output bias.
  std::size_t parameter_count() const;
  double& parameter(std::size_t i);

  // Cross-entropy -[y log M + (1-y) log(1-M)] and its gradient with respect
  // to every parameter, in parameter() order.
  double Loss(std::span<const double> input, int label) const;
  double LossAndGradient(std::span<const double> input, int label,
                         std::vector<double>& gradient) const;

  // Text format: `ffnn <input_dim> <hidden_dim>`, then one line per hidden
  // unit (its input weights), one line of hidden biases, one line of output
  // weights and one line holding the output bias.
  std::string Serialize() const;
  static Classifier Deserialize(std::string_view text);
  void Save(const std::filesystem::path& path) const;
  static Classifier Load(const std::filesystem::path& path);

  friend bool operator==(const Classifier&, const Classifier&) = default;

 private:
  int input_dim_ = 0;
  int hidden_dim_ = 0;
  std::vector<double> hidden_weights_;
  std::vector<double> hidden_bias_;
  std::vector<double> output_weights_;
  double output_bias_ = 0.0;
};

struct ClassifierParams {
  int hidden_dim = 20;
  int epochs = 50;
  double learning_rate = 0.05;
  std::uint64_t seed = 1;
};

struct ClassifierReport {
  std::vector<double> epoch_mean_loss;
};

// Plain per-case SGD on mean cross-entropy with a seeded shuffle each
// epoch. `init` overrides the random initialization. Throws Error when the
// data is empty or holds a single class.
Classifier TrainClassifier(const TrainingSet& data,
                           const ClassifierParams& params,
                           const std::optional<Classifier>& init = {},
                           ClassifierReport* report = nullptr);

// Largest relative error between the analytic gradient and central finite
// differences (step 1e-4) across all parameters. Relative error is
// |a - n| / max(|a|, |n|, 1e-6).
double GradientCheck(const Classifier& model, std::span<const double> input,
                     int label);

}  // namespace stressnet

#endif  // STRESSNET_CLASSIFIER_H_
