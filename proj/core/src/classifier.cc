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

#include "stressnet/classifier.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include <fmt/format.h>

namespace stressnet {
namespace {

double LogSigmoid(double x) {
  return x >= 0.0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x));
}

void AppendRow(std::string& out, std::span<const double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ' ';
    out += FormatExact(values[i]);
  }
  out += '\n';
}

}  // namespace

int TrainingSet::input_dim() const {
  return cases.empty() ? 0 : static_cast<int>(cases.front().features.size());
}

double TrainingSet::positive_fraction() const {
  if (cases.empty()) return 0.0;
  double positives = 0.0;
  for (const auto& c : cases) positives += c.label;
  return positives / static_cast<double>(cases.size());
}

Classifier::Classifier(int input_dim, int hidden_dim)
    : input_dim_(input_dim),
      hidden_dim_(hidden_dim),
      hidden_weights_(static_cast<std::size_t>(input_dim) * hidden_dim, 0.0),
      hidden_bias_(hidden_dim, 0.0),
      output_weights_(hidden_dim, 0.0) {
  if (input_dim < 1 || hidden_dim < 1) {
    throw Error("classifier dimensions must be positive");
  }
}

Classifier Classifier::RandomInit(int input_dim, int hidden_dim,
                                  std::uint64_t seed) {
  Classifier model(input_dim, hidden_dim);
  std::mt19937_64 rng(seed);
  const double in_range = 1.0 / std::sqrt(static_cast<double>(input_dim));
  const double out_range = 1.0 / std::sqrt(static_cast<double>(hidden_dim));
  for (double& w : model.hidden_weights_) {
    w = (UnitInterval(rng()) * 2.0 - 1.0) * in_range;
  }
  for (double& w : model.output_weights_) {
    w = (UnitInterval(rng()) * 2.0 - 1.0) * out_range;
  }
  return model;
}

double Classifier::Logit(std::span<const double> input) const {
  if (static_cast<int>(input.size()) != input_dim_) {
    throw Error(fmt::format("classifier expects {} inputs, got {}", input_dim_,
                            input.size()));
  }
  double z = output_bias_;
  for (int j = 0; j < hidden_dim_; ++j) {
    const std::span<const double> row{
        hidden_weights_.data() + static_cast<std::size_t>(j) * input_dim_,
        static_cast<std::size_t>(input_dim_)};
    z += output_weights_[j] * Sigmoid(Dot(row, input) + hidden_bias_[j]);
  }
  return z;
}

double Classifier::Score(std::span<const double> input) const {
  constexpr double kLow = std::numeric_limits<double>::min();
  const double kHigh = std::nextafter(1.0, 0.0);
  return std::clamp(Sigmoid(Logit(input)), kLow, kHigh);
}

std::size_t Classifier::parameter_count() const {
  return hidden_weights_.size() + hidden_bias_.size() +
         output_weights_.size() + 1;
}

double& Classifier::parameter(std::size_t i) {
  if (i < hidden_weights_.size()) return hidden_weights_[i];
  i -= hidden_weights_.size();
  if (i < hidden_bias_.size()) return hidden_bias_[i];
  i -= hidden_bias_.size();
  if (i < output_weights_.size()) return output_weights_[i];
  return output_bias_;
}

double Classifier::Loss(std::span<const double> input, int label) const {
  const double z = Logit(input);
  return label == 1 ? -LogSigmoid(z) : -LogSigmoid(-z);
}

double Classifier::LossAndGradient(std::span<const double> input, int label,
                                   std::vector<double>& gradient) const {
  if (static_cast<int>(input.size()) != input_dim_) {
    throw Error(fmt::format("classifier expects {} inputs, got {}", input_dim_,
                            input.size()));
  }
  std::vector<double> hidden(hidden_dim_);
  double z = output_bias_;
  for (int j = 0; j < hidden_dim_; ++j) {
    const std::span<const double> row{
        hidden_weights_.data() + static_cast<std::size_t>(j) * input_dim_,
        static_cast<std::size_t>(input_dim_)};
    hidden[j] = Sigmoid(Dot(row, input) + hidden_bias_[j]);
    z += output_weights_[j] * hidden[j];
  }
  const double dz = Sigmoid(z) - label;
  gradient.assign(parameter_count(), 0.0);
  const std::size_t bias_at = hidden_weights_.size();
  const std::size_t out_at = bias_at + hidden_bias_.size();
  for (int j = 0; j < hidden_dim_; ++j) {
    gradient[out_at + j] = dz * hidden[j];
    const double da = dz * output_weights_[j] * hidden[j] * (1.0 - hidden[j]);
    gradient[bias_at + j] = da;
    double* row = gradient.data() + static_cast<std::size_t>(j) * input_dim_;
    for (int k = 0; k < input_dim_; ++k) row[k] = da * input[k];
  }
  gradient.back() = dz;
  return label == 1 ? -LogSigmoid(z) : -LogSigmoid(-z);
}

std::string Classifier::Serialize() const {
  std::string out = fmt::format("ffnn {} {}\n", input_dim_, hidden_dim_);
  for (int j = 0; j < hidden_dim_; ++j) {
    AppendRow(out, {hidden_weights_.data() + static_cast<std::size_t>(j) * input_dim_,
                    static_cast<std::size_t>(input_dim_)});
  }
  AppendRow(out, hidden_bias_);
  AppendRow(out, output_weights_);
  out += FormatExact(output_bias_);
  out += '\n';
  return out;
}

Classifier Classifier::Deserialize(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string magic;
  int input_dim = 0, hidden_dim = 0;
  if (!(in >> magic >> input_dim >> hidden_dim) || magic != "ffnn") {
    throw Error("malformed classifier header");
  }
  Classifier model(input_dim, hidden_dim);
  for (std::size_t i = 0; i < model.parameter_count(); ++i) {
    if (!(in >> model.parameter(i))) throw Error("truncated classifier weights");
  }
  return model;
}

void Classifier::Save(const std::filesystem::path& path) const {
  WriteFileAtomic(path, Serialize());
}

Classifier Classifier::Load(const std::filesystem::path& path) {
  return Deserialize(ReadFile(path));
}

Classifier TrainClassifier(const TrainingSet& data,
                           const ClassifierParams& params,
                           const std::optional<Classifier>& init,
                           ClassifierReport* report) {
  if (data.cases.empty()) throw Error("cannot train on an empty training set");
  const int dim = data.input_dim();
  bool has_pos = false, has_neg = false;
  for (const auto& c : data.cases) {
    if (static_cast<int>(c.features.size()) != dim) {
      throw Error("training cases differ in dimension");
    }
    if (c.label != 0 && c.label != 1) throw Error("labels must be 0 or 1");
    (c.label ? has_pos : has_neg) = true;
  }
  if (!has_pos || !has_neg) {
    throw Error("training set must contain both classes");
  }
  if (params.epochs < 1 || !(params.learning_rate > 0.0)) {
    throw Error("classifier needs epochs >= 1 and a positive learning rate");
  }
  Classifier model = init ? *init
                          : Classifier::RandomInit(dim, params.hidden_dim,
                                                   params.seed);
  if (model.input_dim() != dim) {
    throw Error("initial classifier does not match the input dimension");
  }

  std::mt19937_64 rng(params.seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<std::size_t> order(data.cases.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::vector<double> gradient;
  for (int epoch = 0; epoch < params.epochs; ++epoch) {
    for (std::size_t i = order.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(UnitInterval(rng()) * i);
      std::swap(order[i - 1], order[j]);
    }
    for (std::size_t i : order) {
      const auto& c = data.cases[i];
      model.LossAndGradient(c.features, c.label, gradient);
      for (std::size_t p = 0; p < gradient.size(); ++p) {
        model.parameter(p) -= params.learning_rate * gradient[p];
      }
    }
    if (report) {
      double loss = 0.0;
      for (const auto& c : data.cases) loss += model.Loss(c.features, c.label);
      report->epoch_mean_loss.push_back(loss /
                                        static_cast<double>(data.cases.size()));
    }
  }
  return model;
}

double GradientCheck(const Classifier& model, std::span<const double> input,
                     int label) {
  constexpr double kStep = 1e-4;
  std::vector<double> analytic;
  model.LossAndGradient(input, label, analytic);
  Classifier probe = model;
  double worst = 0.0;
  for (std::size_t p = 0; p < probe.parameter_count(); ++p) {
    const double original = probe.parameter(p);
    probe.parameter(p) = original + kStep;
    const double up = probe.Loss(input, label);
    probe.parameter(p) = original - kStep;
    const double down = probe.Loss(input, label);
    probe.parameter(p) = original;
    const double numeric = (up - down) / (2.0 * kStep);
    const double denom =
        std::max({std::abs(analytic[p]), std::abs(numeric), 1e-6});
    worst = std::max(worst, std::abs(analytic[p] - numeric) / denom);
  }
  return worst;
}

}  // namespace stressnet
