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

#ifndef STRESSNET_DESCRIBE_H_
#define STRESSNET_DESCRIBE_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "stressnet/classifier.h"
#include "stressnet/pvdm.h"
#include "stressnet/text.h"

namespace stressnet {

// x_{d,w} = M(V_d) * M(V_w) * f_{d,w}
inline double WordWeight(double doc_score, double word_score, int freq) {
  return doc_score * word_score * static_cast<double>(freq);
}

class StopwordList {
 public:
  StopwordList() = default;
  explicit StopwordList(std::set<std::string> tokens);
  // One token per line; blank lines ignored. Tokens are lowercased.
  static StopwordList Load(const std::filesystem::path& path);

  bool Contains(const std::string& token) const {
    return tokens_.contains(token);
  }
  const std::set<std::string>& tokens() const { return tokens_; }

 private:
  std::set<std::string> tokens_;
};

using WordScores = std::unordered_map<std::string, double>;

// M(V_w) for every vocabulary word, feeding word vectors to the document
// classifier.
WordScores ScoreVocabulary(const EmbeddingModel& model, const Classifier& clf);

// x_{d,w} for every distinct token of one document. Stopwords and tokens
// without a word score are dropped.
std::map<std::string, double> DocumentWordWeights(
    const std::vector<std::string>& tokens, double doc_score,
    const WordScores& word_scores, const StopwordList& stopwords);

struct Keyword {
  std::string token;
  double score = 0.0;
};

// Sums each token's weight over the given documents and returns the top k,
// highest first, ties by token. Throws Error when k <= 0.
std::vector<Keyword> RankKeywords(
    std::span<const std::map<std::string, double>> doc_weights, int k);

struct KeywordSource {
  std::string group;
  const std::vector<std::string>* tokens = nullptr;
  double doc_score = 0.0;
};

// Ranked keywords per group label.
std::map<std::string, std::vector<Keyword>> ExtractKeywords(
    std::span<const KeywordSource> sources, const WordScores& word_scores,
    const StopwordList& stopwords, int k);

// Single-linkage clusters of keywords whose word vectors have cosine
// similarity >= threshold. Clusters keep keyword rank order and are ordered
// by their best-ranked member.
std::vector<std::vector<std::string>> GroupKeywordsBySimilarity(
    std::span<const Keyword> keywords, const EmbeddingModel& model,
    double threshold);

enum class EntityMode { kOff, kRequire, kUpweight };

struct ExcerptOptions {
  int window = 20;
  double max_overlap = 0.5;
  EntityMode entity_mode = EntityMode::kOff;
  double upweight = 2.0;
  int k = 5;
};

void ValidateExcerptOptions(const ExcerptOptions& options);

struct ExcerptSource {
  std::string doc_id;
  std::string text;
  std::vector<TokenSpan> tokens;
  // Weight per token string (x_{d,w}); absent tokens weigh zero.
  std::map<std::string, double> weights;
  // Byte spans of the target entity's mentions in `text`.
  std::vector<std::pair<std::size_t, std::size_t>> mention_spans;
};

struct Excerpt {
  std::string doc_id;
  int start = 0;  // token range [start, end)
  int end = 0;
  std::string text;
  double total_score = 0.0;
  bool contains_entity = false;
  std::size_t source_index = 0;
};

// Every stride-1 window of `options.window` tokens (one whole-document
// window when the document is shorter), scored by summed token weight and
// adjusted for the entity mode.
std::vector<Excerpt> CandidateWindows(const ExcerptSource& source,
                                      const ExcerptOptions& options,
                                      std::size_t source_index = 0);

// |set(a) ∩ set(b)| / window
double WindowOverlap(std::span<const TokenSpan> a, std::span<const TokenSpan> b,
                     int window);

// Pools candidates from all sources, sorts by descending score (ties by
// source order then start), then greedily accepts candidates whose overlap
// with every accepted excerpt is at most max_overlap, up to k.
std::vector<Excerpt> ExtractExcerpts(std::span<const ExcerptSource> sources,
                                     const ExcerptOptions& options);

}  // namespace stressnet

#endif  // STRESSNET_DESCRIBE_H_
