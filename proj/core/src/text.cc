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

#include "stressnet/text.h"

namespace stressnet {
namespace {

bool IsWordByte(unsigned char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') ||
         (c >= 'A' && c <= 'Z') || c >= 0x80;
}

bool IsDigit(unsigned char c) { return c >= '0' && c <= '9'; }

}  // namespace

std::vector<TokenSpan> TokenizeWithOffsets(std::string_view text,
                                           const TokenizerConfig& config) {
  std::vector<TokenSpan> tokens;
  const std::size_t n = text.size();
  std::size_t i = 0;
  while (i < n) {
    if (!IsWordByte(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    const std::size_t begin = i;
    while (i < n) {
      const auto c = static_cast<unsigned char>(text[i]);
      if (IsWordByte(c)) {
        ++i;
      } else if (c == '.' && config.keep_decimal_points && i > begin &&
                 IsDigit(static_cast<unsigned char>(text[i - 1])) &&
                 i + 1 < n && IsDigit(static_cast<unsigned char>(text[i + 1]))) {
        ++i;
      } else {
        break;
      }
    }
    TokenSpan token{std::string(text.substr(begin, i - begin)), begin, i};
    if (config.lowercase) {
      for (char& c : token.text) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
      }
    }
    tokens.push_back(std::move(token));
  }
  return tokens;
}

std::vector<std::string> Tokenize(std::string_view text,
                                  const TokenizerConfig& config) {
  std::vector<std::string> out;
  for (auto& token : TokenizeWithOffsets(text, config)) {
    out.push_back(std::move(token.text));
  }
  return out;
}

std::string JoinTokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i];
  }
  return out;
}

}  // namespace stressnet
