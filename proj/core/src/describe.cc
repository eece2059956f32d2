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

#include "stressnet/describe.h"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <tuple>

#include <fmt/format.h>

namespace stressnet {

StopwordList::StopwordList(std::set<std::string> tokens)
    : tokens_(std::move(tokens)) {}

StopwordList StopwordList::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(fmt::format("cannot open stopwords '{}'", path.string()));
  std::set<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    for (auto& token : Tokenize(line)) tokens.insert(std::move(token));
  }
  return StopwordList(std::move(tokens));
}

WordScores ScoreVocabulary(const EmbeddingModel& model, const Classifier& clf) {
  WordScores scores;
  for (int w = 0; w < model.vocab().size(); ++w) {
    scores.emplace(model.vocab().entry(w).token, clf.Score(model.word_vector(w)));
  }
  return scores;
}

std::map<std::string, double> DocumentWordWeights(
    const std::vector<std::string>& tokens, double doc_score,
    const WordScores& word_scores, const StopwordList& stopwords) {
  std::map<std::string, int> freq;
  for (const auto& token : tokens) ++freq[token];
  std::map<std::string, double> weights;
  for (const auto& [token, f] : freq) {
    if (stopwords.Contains(token)) continue;
    auto it = word_scores.find(token);
    if (it == word_scores.end()) continue;
    weights.emplace(token, WordWeight(doc_score, it->second, f));
  }
  return weights;
}

std::vector<Keyword> RankKeywords(
    std::span<const std::map<std::string, double>> doc_weights, int k) {
  if (k <= 0) throw Error("keyword count k must be positive");
  std::map<std::string, double> totals;
  for (const auto& weights : doc_weights) {
    for (const auto& [token, x] : weights) totals[token] += x;
  }
  std::vector<Keyword> ranked;
  ranked.reserve(totals.size());
  for (const auto& [token, score] : totals) ranked.push_back({token, score});
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const Keyword& a, const Keyword& b) {
                     return a.score > b.score;
                   });
  if (static_cast<int>(ranked.size()) > k) ranked.resize(k);
  return ranked;
}

std::map<std::string, std::vector<Keyword>> ExtractKeywords(
    std::span<const KeywordSource> sources, const WordScores& word_scores,
    const StopwordList& stopwords, int k) {
  if (k <= 0) throw Error("keyword count k must be positive");
  std::map<std::string, std::vector<std::map<std::string, double>>> grouped;
  for (const auto& source : sources) {
    grouped[source.group].push_back(DocumentWordWeights(
        *source.tokens, source.doc_score, word_scores, stopwords));
  }
  std::map<std::string, std::vector<Keyword>> out;
  for (const auto& [group, weights] : grouped) {
    out.emplace(group, RankKeywords(weights, k));
  }
  return out;
}

std::vector<std::vector<std::string>> GroupKeywordsBySimilarity(
    std::span<const Keyword> keywords, const EmbeddingModel& model,
    double threshold) {
  const std::size_t n = keywords.size();
  std::vector<std::size_t> root(n);
  std::iota(root.begin(), root.end(), 0);
  auto find = [&](std::size_t i) {
    while (root[i] != i) i = root[i] = root[root[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i) {
    auto vi = model.vocab().Find(keywords[i].token);
    if (!vi) continue;
    for (std::size_t j = i + 1; j < n; ++j) {
      auto vj = model.vocab().Find(keywords[j].token);
      if (!vj) continue;
      if (Cosine(model.word_vector(*vi), model.word_vector(*vj)) >= threshold) {
        const auto a = find(i), b = find(j);
        root[std::max(a, b)] = std::min(a, b);
      }
    }
  }
  // Roots are the smallest (best-ranked) index of each cluster.
  std::map<std::size_t, std::vector<std::string>> clusters;
  for (std::size_t i = 0; i < n; ++i) {
    clusters[find(i)].push_back(keywords[i].token);
  }
  std::vector<std::vector<std::string>> out;
  for (auto& [r, members] : clusters) out.push_back(std::move(members));
  return out;
}

void ValidateExcerptOptions(const ExcerptOptions& options) {
  if (options.window < 2) throw Error("excerpt window must be >= 2 tokens");
  if (!(options.max_overlap >= 0.0 && options.max_overlap < 1.0)) {
    throw Error("max_overlap must lie in [0, 1)");
  }
  if (options.k <= 0) throw Error("excerpt count k must be positive");
  if (options.entity_mode == EntityMode::kUpweight && !(options.upweight > 0.0)) {
    throw Error("upweight factor must be positive");
  }
}

std::vector<Excerpt> CandidateWindows(const ExcerptSource& source,
                                      const ExcerptOptions& options,
                                      std::size_t source_index) {
  std::vector<Excerpt> out;
  const int n = static_cast<int>(source.tokens.size());
  if (n == 0) return out;
  const int length = std::min(options.window, n);
  std::vector<double> token_weight(n, 0.0);
  for (int i = 0; i < n; ++i) {
    auto it = source.weights.find(source.tokens[i].text);
    if (it != source.weights.end()) token_weight[i] = it->second;
  }
  std::vector<double> window_weights;
  for (int start = 0; start + length <= n; ++start) {
    const int end = start + length;
    Excerpt e;
    e.doc_id = source.doc_id;
    e.start = start;
    e.end = end;
    e.source_index = source_index;
    window_weights.assign(token_weight.begin() + start, token_weight.begin() + end);
    std::sort(window_weights.begin(), window_weights.end());
    for (double w : window_weights) e.total_score += w;
    const std::size_t lo = source.tokens[start].begin;
    const std::size_t hi = source.tokens[end - 1].end;
    for (const auto& [ms, me] : source.mention_spans) {
      if (ms < hi && lo < me) {
        e.contains_entity = true;
        break;
      }
    }
    if (options.entity_mode == EntityMode::kRequire && !e.contains_entity) {
      continue;
    }
    if (options.entity_mode == EntityMode::kUpweight && e.contains_entity) {
      e.total_score *= options.upweight;
    }
    e.text = source.text.substr(lo, hi - lo);
    out.push_back(std::move(e));
  }
  return out;
}

double WindowOverlap(std::span<const TokenSpan> a, std::span<const TokenSpan> b,
                     int window) {
  std::set<std::string_view> sa, sb;
  for (const auto& t : a) sa.insert(t.text);
  for (const auto& t : b) sb.insert(t.text);
  std::size_t shared = 0;
  for (const auto& t : sa) shared += sb.count(t);
  return static_cast<double>(shared) / static_cast<double>(window);
}

std::vector<Excerpt> ExtractExcerpts(std::span<const ExcerptSource> sources,
                                     const ExcerptOptions& options) {
  ValidateExcerptOptions(options);
  std::vector<Excerpt> candidates;
  for (std::size_t s = 0; s < sources.size(); ++s) {
    auto windows = CandidateWindows(sources[s], options, s);
    std::move(windows.begin(), windows.end(), std::back_inserter(candidates));
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Excerpt& a, const Excerpt& b) {
                     return a.total_score > b.total_score;
                   });
  auto tokens_of = [&](const Excerpt& e) {
    const auto& all = sources[e.source_index].tokens;
    return std::span<const TokenSpan>(all.data() + e.start,
                                      static_cast<std::size_t>(e.end - e.start));
  };
  std::vector<Excerpt> accepted;
  for (auto& candidate : candidates) {
    if (static_cast<int>(accepted.size()) >= options.k) break;
    bool redundant = false;
    for (const auto& kept : accepted) {
      if (WindowOverlap(tokens_of(candidate), tokens_of(kept), options.window) >
          options.max_overlap) {
        redundant = true;
        break;
      }
    }
    if (!redundant) accepted.push_back(std::move(candidate));
  }
  return accepted;
}

}  // namespace stressnet
