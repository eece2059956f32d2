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

#ifndef STRESSNET_VOCABULARY_H_
#define STRESSNET_VOCABULARY_H_

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace stressnet {

struct VocabEntry {
  std::string token;
  std::int64_t count = 0;
};

// Word ids are assigned by descending frequency, ties by ascending token.
class Vocabulary {
 public:
  Vocabulary() = default;

  // Counts every token of every document and keeps those seen at least
  // `min_count` times. Throws Error when the corpus has no tokens.
  static Vocabulary Build(const std::vector<std::vector<std::string>>& docs,
                          std::int64_t min_count);

  // Rebuilds from stored entries, which must already be in canonical order.
  static Vocabulary FromEntries(std::vector<VocabEntry> entries,
                                std::int64_t min_count);

  std::optional<int> Find(const std::string& token) const;
  const VocabEntry& entry(int id) const { return entries_[id]; }
  const std::vector<VocabEntry>& entries() const { return entries_; }
  int size() const { return static_cast<int>(entries_.size()); }
  std::int64_t min_count() const { return min_count_; }

  // In-vocabulary ids of `tokens`, unknown tokens dropped.
  std::vector<int> Encode(const std::vector<std::string>& tokens) const;

 private:
  std::vector<VocabEntry> entries_;
  std::unordered_map<std::string, int> index_;
  std::int64_t min_count_ = 1;
};

}  // namespace stressnet

#endif  // STRESSNET_VOCABULARY_H_
