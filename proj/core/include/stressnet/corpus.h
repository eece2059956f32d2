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

#ifndef STRESSNET_CORPUS_H_
#define STRESSNET_CORPUS_H_

#include <cstddef>
#include <filesystem>
#include <istream>
#include <regex>
#include <string>
#include <vector>

#include "stressnet/common.h"
#include "stressnet/text.h"

namespace stressnet {

struct Document {
  std::string doc_id;
  Date published;
  std::string text;
  std::vector<std::string> tokens;
};

// Fills `doc.tokens` from `doc.text`.
void TokenizeDocument(Document& doc, const TokenizerConfig& config = {});

// Corpus files hold one JSON object per line:
//   {"doc_id": "...", "published": "YYYY-MM-DD", "text": "..."}
// Blank lines are ignored. Duplicate doc ids are rejected.
std::vector<Document> ReadCorpus(std::istream& in);
std::vector<Document> ReadCorpusFile(const std::filesystem::path& path);
std::string SerializeCorpus(const std::vector<Document>& docs);

struct CompiledPattern {
  std::string source;
  bool case_sensitive = true;
  std::regex regex;
};

struct EntityPatternSet {
  std::string entity_id;
  std::vector<CompiledPattern> patterns;
};

// Pattern files have one `entity_id<TAB>pattern<TAB>cs|ci` entry per line.
// Lines for the same entity are merged in order of first appearance. Blank
// lines and lines starting with '#' are skipped.
std::vector<EntityPatternSet> CompilePatterns(std::istream& in);
std::vector<EntityPatternSet> CompilePatternsFile(
    const std::filesystem::path& path);

struct Mention {
  std::string doc_id;
  std::string entity_id;
  std::size_t start = 0;  // byte offsets into Document::text
  std::size_t end = 0;

  friend bool operator==(const Mention&, const Mention&) = default;
};

// Every non-empty, non-overlapping match of every pattern, deduplicated per
// (entity, span), ordered by (doc_id, start, end, entity_id). `threads` > 1
// scans documents concurrently; the output is identical either way.
std::vector<Mention> ScanCorpus(const std::vector<Document>& docs,
                                const std::vector<EntityPatternSet>& patterns,
                                unsigned threads = 1);

std::string SerializeMentions(const std::vector<Mention>& mentions);
std::vector<Mention> ReadMentionsFile(const std::filesystem::path& path);

}  // namespace stressnet

#endif  // STRESSNET_CORPUS_H_
