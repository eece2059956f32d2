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

#ifndef STRESSNET_TEXT_H_
#define STRESSNET_TEXT_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace stressnet {

struct TokenizerConfig {
  bool lowercase = true;
  // Keep '.' inside a token when it sits between two digits ("16.8").
  bool keep_decimal_points = true;
};

// A token with its [begin, end) byte range in the source text.
struct TokenSpan {
  std::string text;
  std::size_t begin = 0;
  std::size_t end = 0;
};

// Splits on every byte that is not an ASCII letter or digit, except a '.'
// flanked by digits. Bytes >= 0x80 count as word characters.
std::vector<TokenSpan> TokenizeWithOffsets(std::string_view text,
                                           const TokenizerConfig& config = {});
std::vector<std::string> Tokenize(std::string_view text,
                                  const TokenizerConfig& config = {});

std::string JoinTokens(const std::vector<std::string>& tokens);

}  // namespace stressnet

#endif  // STRESSNET_TEXT_H_
