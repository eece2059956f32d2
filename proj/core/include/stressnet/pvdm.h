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

#ifndef STRESSNET_PVDM_H_
#define STRESSNET_PVDM_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "stressnet/common.h"
#include "stressnet/corpus.h"
#include "stressnet/huffman.h"
#include "stressnet/vocabulary.h"

namespace stressnet {

struct TrainParams {
  int dim = 400;
  int context_n = 8;
  int epochs = 20;
  double initial_learning_rate = 0.025;
  double final_learning_rate = 0.0001;
  std::int64_t min_count = 1;
  std::uint64_t rng_seed = 1;
  // Lock-free concurrent updates when > 1. Results then depend on thread
  // scheduling; 1 is the deterministic mode.
  unsigned threads = 1;
};

void ValidateTrainParams(const TrainParams& params);

// Distributed-memory paragraph vectors: documents and words embedded in one
// space, trained to predict each word from its document vector averaged
// with up to `context_n` preceding word vectors. The output layer is a
// hierarchical softmax over the vocabulary's Huffman tree.
class EmbeddingModel {
 public:
  EmbeddingModel() = default;
  EmbeddingModel(Vocabulary vocab, int dim, int context_n);

  int dim() const { return dim_; }
  int context_n() const { return context_n_; }
  const Vocabulary& vocab() const { return vocab_; }
  const HuffmanTree& tree() const { return tree_; }
  int doc_count() const { return static_cast<int>(doc_ids_.size()); }
  const std::vector<std::string>& doc_ids() const { return doc_ids_; }

  std::span<double> word_vector(int word) {
    return {word_vectors_.data() + Offset(word), Width()};
  }
  std::span<const double> word_vector(int word) const {
    return {word_vectors_.data() + Offset(word), Width()};
  }
  std::span<double> node_weights(int node) {
    return {node_weights_.data() + Offset(node), Width()};
  }
  std::span<const double> node_weights(int node) const {
    return {node_weights_.data() + Offset(node), Width()};
  }
  std::span<double> doc_vector(int index) {
    return {doc_vectors_.data() + Offset(index), Width()};
  }
  std::span<const double> doc_vector(int index) const {
    return {doc_vectors_.data() + Offset(index), Width()};
  }

  // Throws Error for unknown ids.
  int DocIndex(const std::string& doc_id) const;
  bool HasDoc(const std::string& doc_id) const;
  std::span<const double> DocVector(const std::string& doc_id) const;
  // Throws Error for tokens outside the vocabulary.
  std::span<const double> WordVector(const std::string& token) const;

  // Appends a zero document vector and returns its index.
  int AddDoc(const std::string& doc_id);

  // Combined projection: mean of the document vector and the context word
  // vectors.
  Vector Projection(std::span<const double> doc_vec,
                    std::span<const int> context) const;

  // log p(target | projection) along the target's Huffman path.
  double LogProb(std::span<const double> projection, int target) const;
  // The same probability as a product of the branch sigmoids.
  double Probability(std::span<const double> projection, int target) const;

  // Full next-word distribution given a document and preceding tokens.
  // Unknown context tokens are skipped; only the last `context_n` known
  // tokens are used.
  std::vector<double> NextWordDistribution(
      const std::string& doc_id, const std::vector<std::string>& context) const;

  // Text format:
  //   pvdm <dim> <context_n> <vocab_size> <doc_count>
  //   w <token> <freq> <dim floats>     (one per word, in id order)
  //   n <id> <dim floats>               (one per internal node)
  //   d <doc_id> <dim floats>           (one per document)
  std::string Serialize() const;
  static EmbeddingModel Deserialize(std::string_view text);
  void Save(const std::filesystem::path& path) const;
  static EmbeddingModel Load(const std::filesystem::path& path);

  friend bool operator==(const EmbeddingModel& a, const EmbeddingModel& b);

 private:
  std::size_t Offset(int row) const {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(dim_);
  }
  std::size_t Width() const { return static_cast<std::size_t>(dim_); }

  int dim_ = 0;
  int context_n_ = 0;
  Vocabulary vocab_;
  HuffmanTree tree_;
  std::vector<double> word_vectors_;
  std::vector<double> node_weights_;
  std::vector<double> doc_vectors_;
  std::vector<std::string> doc_ids_;
  std::map<std::string, int> doc_index_;
};

// Gradient of the per-position loss -log p(target | doc, context).
struct PvdmGradient {
  double loss = 0.0;
  Vector doc;  // d loss / d doc vector
  // d loss / d word vector, one entry per distinct context word.
  std::map<int, Vector> words;
  // d loss / d node weights, one entry per node on the target's path.
  std::map<int, Vector> nodes;
};

PvdmGradient ComputePvdmGradient(const EmbeddingModel& model,
                                 std::span<const double> doc_vec,
                                 std::span<const int> context, int target);

struct PvdmReport {
  // Mean log p(w_t | d, context) over all predicted positions, per epoch,
  // measured before each position's update.
  std::vector<double> epoch_mean_log_prob;
  int skipped_docs = 0;
  std::int64_t positions_per_epoch = 0;
};

struct PvdmResult {
  EmbeddingModel model;
  PvdmReport report;
};

// Trains word, document and output vectors. Documents with fewer than two
// in-vocabulary tokens are skipped and counted. Every position with at
// least one in-vocabulary predecessor is a prediction target. Throws Error
// when no document is trainable.
PvdmResult TrainPvdm(const std::vector<Document>& docs,
                     const TrainParams& params);

// Optimizes a fresh document vector for `tokens` with every other
// parameter frozen, using the same epochs and learning-rate schedule.
Vector InferDocVector(const EmbeddingModel& model,
                      const std::vector<std::string>& tokens,
                      const TrainParams& params);

// Vocabulary words ranked by cosine similarity to `query`.
std::vector<std::pair<std::string, double>> NearestWords(
    const EmbeddingModel& model, std::span<const double> query, int k);

}  // namespace stressnet

#endif  // STRESSNET_PVDM_H_
