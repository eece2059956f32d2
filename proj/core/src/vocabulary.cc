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

#include "stressnet/vocabulary.h"

#include <algorithm>
#include <map>

#include <fmt/format.h>

#include "stressnet/common.h"

namespace stressnet {

Vocabulary Vocabulary::Build(const std::vector<std::vector<std::string>>& docs,
                             std::int64_t min_count) {
  std::unordered_map<std::string, std::int64_t> counts;
  std::int64_t total = 0;
  for (const auto& tokens : docs) {
    for (const auto& token : tokens) {
      ++counts[token];
      ++total;
    }
  }
  if (total == 0) throw Error("cannot build a vocabulary from an empty corpus");
  std::vector<VocabEntry> entries;
  for (auto& [token, count] : counts) {
    if (count >= min_count) entries.push_back(VocabEntry{token, count});
  }
  if (entries.empty()) {
    throw Error(fmt::format("no token occurs at least {} times", min_count));
  }
  std::sort(entries.begin(), entries.end(),
            [](const VocabEntry& a, const VocabEntry& b) {
              if (a.count != b.count) return a.count > b.count;
              return a.token < b.token;
            });
  return FromEntries(std::move(entries), min_count);
}

Vocabulary Vocabulary::FromEntries(std::vector<VocabEntry> entries,
                                   std::int64_t min_count) {
  Vocabulary vocab;
  vocab.min_count_ = min_count;
  vocab.entries_ = std::move(entries);
  for (int i = 0; i < vocab.size(); ++i) {
    const auto& e = vocab.entries_[i];
    if (e.count < min_count) {
      throw Error(fmt::format("token '{}' below min_count", e.token));
    }
    if (!vocab.index_.emplace(e.token, i).second) {
      throw Error(fmt::format("duplicate vocabulary token '{}'", e.token));
    }
  }
  return vocab;
}

std::optional<int> Vocabulary::Find(const std::string& token) const {
  auto it = index_.find(token);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<int> Vocabulary::Encode(const std::vector<std::string>& tokens) const {
  std::vector<int> ids;
  ids.reserve(tokens.size());
  for (const auto& token : tokens) {
    if (auto id = Find(token)) ids.push_back(*id);
  }
  return ids;
}

}  // namespace stressnet
