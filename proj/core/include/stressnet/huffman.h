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

#ifndef STRESSNET_HUFFMAN_H_
#define STRESSNET_HUFFMAN_H_

#include <cstdint>
#include <span>
#include <vector>

namespace stressnet {

// Binary Huffman code over word ids. For each word, `codes[w][i]` is the
// branch taken at internal node `paths[w][i]`, root first. Internal nodes
// are numbered 0..node_count()-1 in merge order, so the root is the last.
class HuffmanTree {
 public:
  HuffmanTree() = default;

  // Repeatedly merges the two lightest nodes. Equal weights are resolved by
  // the lower id, where leaves (word ids) precede internal nodes and
  // internal nodes are ordered by creation. A single word gets the
  // one-bit code {0} through one internal node.
  static HuffmanTree Build(std::span<const std::int64_t> counts);

  int word_count() const { return static_cast<int>(codes_.size()); }
  int node_count() const { return node_count_; }
  const std::vector<std::uint8_t>& code(int word) const { return codes_[word]; }
  const std::vector<int>& path(int word) const { return paths_[word]; }

 private:
  std::vector<std::vector<std::uint8_t>> codes_;
  std::vector<std::vector<int>> paths_;
  int node_count_ = 0;
};

}  // namespace stressnet

#endif  // STRESSNET_HUFFMAN_H_
