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

#include "stressnet/pvdm.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>
#include <type_traits>

#include <fmt/format.h>

namespace stressnet {
namespace {

// log(sigmoid(x)) without overflow for large |x|.
double LogSigmoid(double x) {
  return x >= 0.0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x));
}

void FillUniform(std::span<double> values, double half_width,
                 std::mt19937_64& rng) {
  for (double& v : values) v = (UnitInterval(rng()) * 2.0 - 1.0) * half_width;
}

template <typename T>
void ShuffleInPlace(std::vector<T>& items, std::mt19937_64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(UnitInterval(rng()) * i);
    std::swap(items[i - 1], items[j]);
  }
}

// Context ids preceding position `t`, at most `context_n` of them.
std::span<const int> ContextBefore(const std::vector<int>& ids, std::size_t t,
                                   int context_n) {
  const std::size_t n = std::min<std::size_t>(t, context_n);
  return {ids.data() + (t - n), n};
}

struct Scratch {
  Vector projection;
  Vector error;
};

// One stochastic ascent step on log p(target | doc, context). With
// kUpdateShared false only the document vector moves. Returns the log
// probability before the update.
template <bool kUpdateShared>
double StepPosition(
    std::conditional_t<kUpdateShared, EmbeddingModel&, const EmbeddingModel&>
        model,
    std::span<double> doc_vec, std::span<const int> context, int target,
    double learning_rate, Scratch& scratch) {
  const int dim = model.dim();
  auto& h = scratch.projection;
  auto& error = scratch.error;
  h.assign(doc_vec.begin(), doc_vec.end());
  for (int word : context) {
    const auto v = model.word_vector(word);
    for (int i = 0; i < dim; ++i) h[i] += v[i];
  }
  const double scale = 1.0 / static_cast<double>(context.size() + 1);
  for (double& x : h) x *= scale;
  error.assign(dim, 0.0);

  const auto& code = model.tree().code(target);
  const auto& path = model.tree().path(target);
  double log_prob = 0.0;
  for (std::size_t j = 0; j < path.size(); ++j) {
    const double x = Dot(h, model.node_weights(path[j]));
    const double label = code[j] == 0 ? 1.0 : 0.0;
    log_prob += code[j] == 0 ? LogSigmoid(x) : LogSigmoid(-x);
    const double g = learning_rate * (label - Sigmoid(x));
    if constexpr (kUpdateShared) {
      auto u = model.node_weights(path[j]);
      for (int i = 0; i < dim; ++i) {
        error[i] += g * u[i];
        u[i] += g * h[i];
      }
    } else {
      const auto u = model.node_weights(path[j]);
      for (int i = 0; i < dim; ++i) error[i] += g * u[i];
    }
  }
  for (int i = 0; i < dim; ++i) doc_vec[i] += error[i] * scale;
  if constexpr (kUpdateShared) {
    for (int word : context) {
      auto v = model.word_vector(word);
      for (int i = 0; i < dim; ++i) v[i] += error[i] * scale;
    }
  }
  return log_prob;
}

double LearningRate(const TrainParams& params, std::int64_t done,
                    std::int64_t total) {
  const double progress =
      total > 0 ? std::min(1.0, static_cast<double>(done) / total) : 0.0;
  return params.initial_learning_rate -
         (params.initial_learning_rate - params.final_learning_rate) * progress;
}

void AppendRow(std::string& out, std::span<const double> values) {
  for (double v : values) {
    out += ' ';
    out += FormatExact(v);
  }
  out += '\n';
}

}  // namespace

void ValidateTrainParams(const TrainParams& params) {
  if (params.dim < 1) throw Error("semantics: dim must be >= 1");
  if (params.context_n < 1) throw Error("semantics: context_n must be >= 1");
  if (params.epochs < 1) throw Error("semantics: epochs must be >= 1");
  if (!(params.final_learning_rate > 0.0) ||
      params.final_learning_rate > params.initial_learning_rate) {
    throw Error(
        "semantics: learning rates must satisfy 0 < final <= initial");
  }
  if (params.min_count < 1) throw Error("semantics: min_count must be >= 1");
}

EmbeddingModel::EmbeddingModel(Vocabulary vocab, int dim, int context_n)
    : dim_(dim), context_n_(context_n), vocab_(std::move(vocab)) {
  std::vector<std::int64_t> counts;
  for (const auto& e : vocab_.entries()) counts.push_back(e.count);
  tree_ = HuffmanTree::Build(counts);
  word_vectors_.assign(Offset(vocab_.size()), 0.0);
  node_weights_.assign(Offset(tree_.node_count()), 0.0);
}

int EmbeddingModel::DocIndex(const std::string& doc_id) const {
  auto it = doc_index_.find(doc_id);
  if (it == doc_index_.end()) {
    throw Error(fmt::format("unknown document '{}'", doc_id));
  }
  return it->second;
}

bool EmbeddingModel::HasDoc(const std::string& doc_id) const {
  return doc_index_.contains(doc_id);
}

std::span<const double> EmbeddingModel::DocVector(
    const std::string& doc_id) const {
  return doc_vector(DocIndex(doc_id));
}

std::span<const double> EmbeddingModel::WordVector(
    const std::string& token) const {
  auto id = vocab_.Find(token);
  if (!id) throw Error(fmt::format("token '{}' not in vocabulary", token));
  return word_vector(*id);
}

int EmbeddingModel::AddDoc(const std::string& doc_id) {
  auto [it, inserted] = doc_index_.emplace(doc_id, doc_count());
  if (!inserted) throw Error(fmt::format("duplicate document '{}'", doc_id));
  doc_ids_.push_back(doc_id);
  doc_vectors_.resize(Offset(doc_count()), 0.0);
  return it->second;
}

Vector EmbeddingModel::Projection(std::span<const double> doc_vec,
                                  std::span<const int> context) const {
  Vector h(doc_vec.begin(), doc_vec.end());
  for (int word : context) {
    const auto v = word_vector(word);
    for (int i = 0; i < dim_; ++i) h[i] += v[i];
  }
  const double scale = 1.0 / static_cast<double>(context.size() + 1);
  for (double& x : h) x *= scale;
  return h;
}

double EmbeddingModel::LogProb(std::span<const double> projection,
                               int target) const {
  const auto& code = tree_.code(target);
  const auto& path = tree_.path(target);
  double log_prob = 0.0;
  for (std::size_t j = 0; j < path.size(); ++j) {
    const double x = Dot(projection, node_weights(path[j]));
    log_prob += code[j] == 0 ? LogSigmoid(x) : LogSigmoid(-x);
  }
  return log_prob;
}

double EmbeddingModel::Probability(std::span<const double> projection,
                                  int target) const {
  const auto& code = tree_.code(target);
  const auto& path = tree_.path(target);
  double p = 1.0;
  for (std::size_t j = 0; j < path.size(); ++j) {
    const double x = Dot(projection, node_weights(path[j]));
    p *= Sigmoid(code[j] == 0 ? x : -x);
  }
  return p;
}

std::vector<double> EmbeddingModel::NextWordDistribution(
    const std::string& doc_id, const std::vector<std::string>& context) const {
  const auto ids = vocab_.Encode(context);
  const auto ctx = ContextBefore(ids, ids.size(), context_n_);
  const Vector h = Projection(DocVector(doc_id), ctx);
  std::vector<double> probs(vocab_.size());
  for (int w = 0; w < vocab_.size(); ++w) probs[w] = Probability(h, w);
  return probs;
}

std::string EmbeddingModel::Serialize() const {
  std::string out = fmt::format("pvdm {} {} {} {}\n", dim_, context_n_,
                                vocab_.size(), doc_count());
  for (int w = 0; w < vocab_.size(); ++w) {
    const auto& e = vocab_.entry(w);
    out += fmt::format("w {} {}", e.token, e.count);
    AppendRow(out, word_vector(w));
  }
  for (int n = 0; n < tree_.node_count(); ++n) {
    out += fmt::format("n {}", n);
    AppendRow(out, node_weights(n));
  }
  for (int d = 0; d < doc_count(); ++d) {
    if (doc_ids_[d].find_first_of(" \t\r\n") != std::string::npos) {
      throw Error(fmt::format("doc_id '{}' contains whitespace", doc_ids_[d]));
    }
    out += fmt::format("d {}", doc_ids_[d]);
    AppendRow(out, doc_vector(d));
  }
  return out;
}

EmbeddingModel EmbeddingModel::Deserialize(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string magic;
  int dim = 0, context_n = 0, vocab_size = 0, doc_count = 0;
  if (!(in >> magic >> dim >> context_n >> vocab_size >> doc_count) ||
      magic != "pvdm" || dim < 1 || context_n < 1 || vocab_size < 1 ||
      doc_count < 0) {
    throw Error("malformed embedding header");
  }
  auto read_row = [&](std::span<double> row, std::string_view what) {
    for (double& v : row) {
      if (!(in >> v)) throw Error(fmt::format("truncated {} row", what));
    }
  };
  std::vector<VocabEntry> entries(vocab_size);
  std::vector<double> words(static_cast<std::size_t>(vocab_size) * dim);
  for (int w = 0; w < vocab_size; ++w) {
    std::string tag;
    if (!(in >> tag >> entries[w].token >> entries[w].count) || tag != "w") {
      throw Error(fmt::format("malformed word line {}", w));
    }
    read_row({words.data() + static_cast<std::size_t>(w) * dim,
              static_cast<std::size_t>(dim)},
             "word");
  }
  EmbeddingModel model(Vocabulary::FromEntries(std::move(entries), 1), dim,
                       context_n);
  model.word_vectors_ = std::move(words);
  for (int n = 0; n < model.tree_.node_count(); ++n) {
    std::string tag;
    int id = -1;
    if (!(in >> tag >> id) || tag != "n" || id != n) {
      throw Error(fmt::format("malformed node line {}", n));
    }
    read_row(model.node_weights(n), "node");
  }
  for (int d = 0; d < doc_count; ++d) {
    std::string tag, doc_id;
    if (!(in >> tag >> doc_id) || tag != "d") {
      throw Error(fmt::format("malformed document line {}", d));
    }
    read_row(model.doc_vector(model.AddDoc(doc_id)), "document");
  }
  return model;
}

void EmbeddingModel::Save(const std::filesystem::path& path) const {
  WriteFileAtomic(path, Serialize());
}

EmbeddingModel EmbeddingModel::Load(const std::filesystem::path& path) {
  return Deserialize(ReadFile(path));
}

bool operator==(const EmbeddingModel& a, const EmbeddingModel& b) {
  if (a.dim_ != b.dim_ || a.context_n_ != b.context_n_ ||
      a.doc_ids_ != b.doc_ids_ || a.word_vectors_ != b.word_vectors_ ||
      a.node_weights_ != b.node_weights_ || a.doc_vectors_ != b.doc_vectors_ ||
      a.vocab_.size() != b.vocab_.size()) {
    return false;
  }
  for (int w = 0; w < a.vocab_.size(); ++w) {
    if (a.vocab_.entry(w).token != b.vocab_.entry(w).token ||
        a.vocab_.entry(w).count != b.vocab_.entry(w).count) {
      return false;
    }
  }
  return true;
}

PvdmGradient ComputePvdmGradient(const EmbeddingModel& model,
                                 std::span<const double> doc_vec,
                                 std::span<const int> context, int target) {
  const int dim = model.dim();
  const Vector h = model.Projection(doc_vec, context);
  const auto& code = model.tree().code(target);
  const auto& path = model.tree().path(target);
  PvdmGradient grad;
  Vector grad_h(dim, 0.0);
  for (std::size_t j = 0; j < path.size(); ++j) {
    const auto u = model.node_weights(path[j]);
    const double x = Dot(h, u);
    grad.loss -= code[j] == 0 ? LogSigmoid(x) : LogSigmoid(-x);
    // d(-log p)/dx for this branch.
    const double dx = Sigmoid(x) - (code[j] == 0 ? 1.0 : 0.0);
    auto& node_grad = grad.nodes[path[j]];
    node_grad.assign(dim, 0.0);
    for (int i = 0; i < dim; ++i) {
      node_grad[i] = dx * h[i];
      grad_h[i] += dx * u[i];
    }
  }
  const double scale = 1.0 / static_cast<double>(context.size() + 1);
  grad.doc.resize(dim);
  for (int i = 0; i < dim; ++i) grad.doc[i] = grad_h[i] * scale;
  for (int word : context) {
    auto& g = grad.words[word];
    if (g.empty()) g.assign(dim, 0.0);
    for (int i = 0; i < dim; ++i) g[i] += grad_h[i] * scale;
  }
  return grad;
}

PvdmResult TrainPvdm(const std::vector<Document>& docs,
                     const TrainParams& params) {
  ValidateTrainParams(params);
  std::vector<std::vector<std::string>> token_lists;
  token_lists.reserve(docs.size());
  for (const auto& doc : docs) token_lists.push_back(doc.tokens);
  Vocabulary vocab = Vocabulary::Build(token_lists, params.min_count);
  if (vocab.size() == 0) throw Error("no token reaches min_count");

  PvdmResult result{EmbeddingModel(std::move(vocab), params.dim,
                                   params.context_n),
                    {}};
  EmbeddingModel& model = result.model;
  PvdmReport& report = result.report;

  struct Trainable {
    int doc_index;
    std::vector<int> ids;
  };
  std::vector<Trainable> trainable;
  for (const auto& doc : docs) {
    auto ids = model.vocab().Encode(doc.tokens);
    if (ids.size() < 2) {
      ++report.skipped_docs;
      continue;
    }
    report.positions_per_epoch += static_cast<std::int64_t>(ids.size()) - 1;
    trainable.push_back(Trainable{model.AddDoc(doc.doc_id), std::move(ids)});
  }
  if (trainable.empty()) {
    throw Error("no document has two or more in-vocabulary tokens");
  }

  std::mt19937_64 rng(params.rng_seed);
  const double half_width = 0.5 / params.dim;
  for (int w = 0; w < model.vocab().size(); ++w) {
    FillUniform(model.word_vector(w), half_width, rng);
  }
  for (int d = 0; d < model.doc_count(); ++d) {
    FillUniform(model.doc_vector(d), half_width, rng);
  }

  const std::int64_t total = report.positions_per_epoch * params.epochs;
  std::vector<std::size_t> order(trainable.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  auto train_doc = [&](const Trainable& item, std::int64_t done,
                       Scratch& scratch, double& log_prob_sum) {
    auto doc_vec = model.doc_vector(item.doc_index);
    for (std::size_t t = 1; t < item.ids.size(); ++t) {
      const double lr = LearningRate(params, done++, total);
      log_prob_sum += StepPosition<true>(
          model, doc_vec, ContextBefore(item.ids, t, params.context_n),
          item.ids[t], lr, scratch);
    }
  };

  std::int64_t done = 0;
  for (int epoch = 0; epoch < params.epochs; ++epoch) {
    ShuffleInPlace(order, rng);
    double log_prob_sum = 0.0;
    if (params.threads <= 1) {
      Scratch scratch;
      for (std::size_t i : order) {
        train_doc(trainable[i], done, scratch, log_prob_sum);
        done += static_cast<std::int64_t>(trainable[i].ids.size()) - 1;
      }
    } else {
      // Unsynchronized updates; positions are claimed per document.
      std::atomic<std::size_t> next{0};
      std::atomic<std::int64_t> shared_done{done};
      std::vector<double> sums(params.threads, 0.0);
      {
        std::vector<std::jthread> workers;
        for (unsigned t = 0; t < params.threads; ++t) {
          workers.emplace_back([&, t] {
            Scratch scratch;
            for (std::size_t k = next++; k < order.size(); k = next++) {
              const auto& item = trainable[order[k]];
              const auto span = static_cast<std::int64_t>(item.ids.size()) - 1;
              train_doc(item, shared_done.fetch_add(span), scratch, sums[t]);
            }
          });
        }
      }
      for (double s : sums) log_prob_sum += s;
      done = shared_done.load();
    }
    report.epoch_mean_log_prob.push_back(
        log_prob_sum / static_cast<double>(report.positions_per_epoch));
  }
  return result;
}

Vector InferDocVector(const EmbeddingModel& model,
                      const std::vector<std::string>& tokens,
                      const TrainParams& params) {
  ValidateTrainParams(params);
  const auto ids = model.vocab().Encode(tokens);
  if (ids.empty()) throw Error("no in-vocabulary token to infer from");
  std::mt19937_64 rng(params.rng_seed);
  Vector doc(model.dim());
  FillUniform(doc, 0.5 / model.dim(), rng);
  // A single known token still trains the document vector against itself
  // with an empty context.
  const std::size_t first = ids.size() > 1 ? 1 : 0;
  const std::int64_t per_epoch = static_cast<std::int64_t>(ids.size() - first);
  const std::int64_t total = per_epoch * params.epochs;
  std::int64_t done = 0;
  Scratch scratch;
  for (int epoch = 0; epoch < params.epochs; ++epoch) {
    for (std::size_t t = first; t < ids.size(); ++t) {
      StepPosition<false>(model, doc, ContextBefore(ids, t, model.context_n()),
                          ids[t], LearningRate(params, done++, total), scratch);
    }
  }
  return doc;
}

std::vector<std::pair<std::string, double>> NearestWords(
    const EmbeddingModel& model, std::span<const double> query, int k) {
  std::vector<std::pair<std::string, double>> ranked;
  for (int w = 0; w < model.vocab().size(); ++w) {
    ranked.emplace_back(model.vocab().entry(w).token,
                        Cosine(query, model.word_vector(w)));
  }
  const auto keep = std::min<std::size_t>(std::max(k, 0), ranked.size());
  std::partial_sort(ranked.begin(), ranked.begin() + keep, ranked.end(),
                    [](const auto& a, const auto& b) {
                      if (a.second != b.second) return a.second > b.second;
                      return a.first < b.first;
                    });
  ranked.resize(keep);
  return ranked;
}

}  // namespace stressnet
