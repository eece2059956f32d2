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

#include "stressnet/huffman.h"

#include <algorithm>
#include <functional>
#include <queue>
#include <utility>

#include "stressnet/common.h"

namespace stressnet {

HuffmanTree HuffmanTree::Build(std::span<const std::int64_t> counts) {
  const int n = static_cast<int>(counts.size());
  if (n == 0) throw Error("cannot build a Huffman tree over an empty vocabulary");
  HuffmanTree tree;
  tree.codes_.resize(n);
  tree.paths_.resize(n);
  if (n == 1) {
    tree.node_count_ = 1;
    tree.codes_[0] = {0};
    tree.paths_[0] = {0};
    return tree;
  }

  // Ids 0..n-1 are leaves, n.. are internal nodes in creation order.
  using Item = std::pair<std::int64_t, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  for (int i = 0; i < n; ++i) queue.emplace(counts[i], i);
  std::vector<int> parent(2 * n - 1, -1);
  std::vector<std::uint8_t> branch(2 * n - 1, 0);
  int next = n;
  while (queue.size() > 1) {
    const auto [wa, a] = queue.top();
    queue.pop();
    const auto [wb, b] = queue.top();
    queue.pop();
    parent[a] = next;
    parent[b] = next;
    branch[a] = 0;
    branch[b] = 1;
    queue.emplace(wa + wb, next);
    ++next;
  }
  tree.node_count_ = n - 1;

  for (int w = 0; w < n; ++w) {
    auto& code = tree.codes_[w];
    auto& path = tree.paths_[w];
    for (int node = w; parent[node] != -1; node = parent[node]) {
      code.push_back(branch[node]);
      path.push_back(parent[node] - n);
    }
    std::reverse(code.begin(), code.end());
    std::reverse(path.begin(), path.end());
  }
  return tree;
}

}  // namespace stressnet
