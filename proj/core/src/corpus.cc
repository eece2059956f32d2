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

#include "stressnet/corpus.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include <fmt/format.h>
#include <json.hpp>

namespace stressnet {

void TokenizeDocument(Document& doc, const TokenizerConfig& config) {
  doc.tokens = Tokenize(doc.text, config);
}

std::vector<Document> ReadCorpus(std::istream& in) {
  std::vector<Document> docs;
  std::set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
      Document doc;
      doc.doc_id = record.at("doc_id").get<std::string>();
      doc.published = ParseDate(record.at("published").get<std::string>());
      doc.text = record.at("text").get<std::string>();
      if (doc.doc_id.empty()) throw Error("empty doc_id");
      if (!seen.insert(doc.doc_id).second) {
        throw Error(fmt::format("duplicate doc_id '{}'", doc.doc_id));
      }
      docs.push_back(std::move(doc));
    } catch (const nlohmann::json::exception& e) {
      throw Error(fmt::format("corpus line {}: {}", line_no, e.what()));
    } catch (const Error& e) {
      throw Error(fmt::format("corpus line {}: {}", line_no, e.what()));
    }
  }
  return docs;
}

std::vector<Document> ReadCorpusFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(fmt::format("cannot open corpus '{}'", path.string()));
  return ReadCorpus(in);
}

std::string SerializeCorpus(const std::vector<Document>& docs) {
  std::string out;
  for (const auto& doc : docs) {
    nlohmann::ordered_json record;
    record["doc_id"] = doc.doc_id;
    record["published"] = FormatDate(doc.published);
    record["text"] = doc.text;
    out += record.dump();
    out += '\n';
  }
  return out;
}

std::vector<EntityPatternSet> CompilePatterns(std::istream& in) {
  std::vector<EntityPatternSet> sets;
  std::map<std::string, std::size_t> slot;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, '\t')) fields.push_back(field);
    if (fields.size() != 3 || fields[0].empty() || fields[1].empty()) {
      throw Error(fmt::format(
          "pattern line {}: expected entity_id<TAB>pattern<TAB>cs|ci", line_no));
    }
    const auto& entity = fields[0];
    const auto& source = fields[1];
    bool case_sensitive;
    if (fields[2] == "cs") {
      case_sensitive = true;
    } else if (fields[2] == "ci") {
      case_sensitive = false;
    } else {
      throw Error(fmt::format("pattern line {}: flag must be cs or ci, got '{}'",
                              line_no, fields[2]));
    }
    auto flags = std::regex::ECMAScript | std::regex::optimize;
    if (!case_sensitive) flags |= std::regex::icase;
    CompiledPattern pattern{source, case_sensitive, {}};
    try {
      pattern.regex = std::regex(source, flags);
    } catch (const std::regex_error& e) {
      throw Error(fmt::format("entity '{}': invalid pattern '{}': {}", entity,
                              source, e.what()));
    }
    auto [it, inserted] = slot.emplace(entity, sets.size());
    if (inserted) sets.push_back(EntityPatternSet{entity, {}});
    sets[it->second].patterns.push_back(std::move(pattern));
  }
  if (sets.empty()) throw Error("pattern file defines no patterns");
  return sets;
}

std::vector<EntityPatternSet> CompilePatternsFile(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(fmt::format("cannot open patterns '{}'", path.string()));
  return CompilePatterns(in);
}

namespace {

void ScanDocument(const Document& doc,
                  const std::vector<EntityPatternSet>& patterns,
                  std::vector<Mention>& out) {
  for (const auto& set : patterns) {
    std::set<std::pair<std::size_t, std::size_t>> spans;
    for (const auto& pattern : set.patterns) {
      auto it = std::sregex_iterator(doc.text.begin(), doc.text.end(),
                                     pattern.regex);
      for (; it != std::sregex_iterator(); ++it) {
        const auto& m = *it;
        if (m.length(0) == 0) continue;
        const auto start = static_cast<std::size_t>(m.position(0));
        spans.emplace(start, start + static_cast<std::size_t>(m.length(0)));
      }
    }
    for (const auto& [start, end] : spans) {
      out.push_back(Mention{doc.doc_id, set.entity_id, start, end});
    }
  }
}

}  // namespace

std::vector<Mention> ScanCorpus(const std::vector<Document>& docs,
                                const std::vector<EntityPatternSet>& patterns,
                                unsigned threads) {
  std::vector<Mention> mentions;
  threads = std::max(1u, std::min<unsigned>(threads, docs.size()));
  if (threads <= 1) {
    for (const auto& doc : docs) ScanDocument(doc, patterns, mentions);
  } else {
    std::vector<std::vector<Mention>> partial(threads);
    {
      std::vector<std::jthread> workers;
      for (unsigned t = 0; t < threads; ++t) {
        workers.emplace_back([&, t] {
          for (std::size_t i = t; i < docs.size(); i += threads) {
            ScanDocument(docs[i], patterns, partial[t]);
          }
        });
      }
    }
    for (auto& part : partial) {
      mentions.insert(mentions.end(), part.begin(), part.end());
    }
  }
  std::sort(mentions.begin(), mentions.end(),
            [](const Mention& a, const Mention& b) {
              return std::tie(a.doc_id, a.start, a.end, a.entity_id) <
                     std::tie(b.doc_id, b.start, b.end, b.entity_id);
            });
  return mentions;
}

std::string SerializeMentions(const std::vector<Mention>& mentions) {
  std::string out = "doc_id,entity_id,start,end\n";
  for (const auto& m : mentions) {
    const std::vector<std::string> row = {m.doc_id, m.entity_id,
                                          std::to_string(m.start),
                                          std::to_string(m.end)};
    out += CsvJoin(row);
    out += '\n';
  }
  return out;
}

std::vector<Mention> ReadMentionsFile(const std::filesystem::path& path) {
  static const std::vector<std::string> kHeader = {"doc_id", "entity_id",
                                                   "start", "end"};
  std::vector<Mention> mentions;
  for (auto& row : ReadCsv(path, kHeader)) {
    mentions.push_back(Mention{std::move(row[0]), std::move(row[1]),
                               std::stoul(row[2]), std::stoul(row[3])});
  }
  return mentions;
}

}  // namespace stressnet
