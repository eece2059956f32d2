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

#include <random>
#include <set>
#include <sstream>
#include <tuple>

#include <gtest/gtest.h>

#include "oracles.h"
#include "stressnet/corpus.h"
#include "stressnet/text.h"

namespace stressnet {
namespace {

using Strings = std::vector<std::string>;

TEST(Tokenize, SentenceLowercased) {
  EXPECT_EQ(Tokenize("Fortis underwent nationalisation on Sunday."),
            (Strings{"fortis", "underwent", "nationalisation", "on", "sunday"}));
}

TEST(Tokenize, Empty) { EXPECT_TRUE(Tokenize("").empty()); }

TEST(Tokenize, DecimalNumbersStayWhole) {
  EXPECT_EQ(Tokenize("UBS's 16.8 percent"),
            (Strings{"ubs", "s", "16.8", "percent"}));
}

TEST(Tokenize, TrailingPeriodDropped) {
  EXPECT_EQ(Tokenize("rose 3. Then 4.5."), (Strings{"rose", "3", "then", "4.5"}));
}

TEST(Tokenize, OffsetsPointIntoText) {
  const std::string text = "  Bank of X, 2.5%";
  for (const auto& t : TokenizeWithOffsets(text)) {
    EXPECT_EQ(oracle::Lower(text.substr(t.begin, t.end - t.begin)), t.text);
  }
}

TEST(Tokenize, IdempotentOnJoinedOutput) {
  std::mt19937_64 rng(7);
  const std::string alphabet = "abcXYZ019 .,;'-\t\n";
  for (int trial = 0; trial < 200; ++trial) {
    std::string s;
    const int len = static_cast<int>(rng() % 60);
    for (int i = 0; i < len; ++i) s += alphabet[rng() % alphabet.size()];
    const auto once = Tokenize(s);
    EXPECT_EQ(Tokenize(JoinTokens(once)), once) << s;
  }
}

std::vector<EntityPatternSet> Compile(const std::string& text) {
  std::istringstream in(text);
  return CompilePatterns(in);
}

TEST(Patterns, OptionalSuffixMatchesBothForms) {
  auto sets = Compile("fortis\tFortis(\\s+Bank)?\tcs\n");
  ASSERT_EQ(sets.size(), 1u);
  const auto& re = sets[0].patterns.at(0).regex;
  std::smatch m;
  std::string a = "Fortis", b = "Fortis Bank";
  EXPECT_TRUE(std::regex_match(a, m, re));
  EXPECT_TRUE(std::regex_match(b, m, re));
}

TEST(Patterns, InvalidPatternNamesEntityAndPattern) {
  try {
    Compile("fortis\t(\tcs\n");
    FAIL() << "expected error";
  } catch (const Error& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("fortis"), std::string::npos) << what;
    EXPECT_NE(what.find("'('"), std::string::npos) << what;
  }
}

TEST(Patterns, EmptyFileRejected) {
  EXPECT_THROW(Compile(""), Error);
  EXPECT_THROW(Compile("# only a comment\n"), Error);
}

TEST(Patterns, LinesForSameEntityMerge) {
  auto sets = Compile("fortis\tFortis\tcs\nubs\tUBS\tcs\nfortis\tFOR\\.BR\tcs\n");
  ASSERT_EQ(sets.size(), 2u);
  const auto& fortis = sets[0].entity_id == "fortis" ? sets[0] : sets[1];
  EXPECT_EQ(fortis.patterns.size(), 2u);
}

Document Doc(std::string id, std::string text) {
  Document d;
  d.doc_id = std::move(id);
  d.published = ParseDate("2008-09-28");
  d.text = std::move(text);
  TokenizeDocument(d);
  return d;
}

TEST(Scan, SingleLiteral) {
  auto pats = Compile("fortis\tFortis\tcs\n");
  auto mentions = ScanCorpus({Doc("d1", "Fortis FOR.BR underwent nationalisation")}, pats);
  ASSERT_EQ(mentions.size(), 1u);
  EXPECT_EQ(mentions[0].entity_id, "fortis");
  EXPECT_EQ(mentions[0].start, 0u);
  EXPECT_EQ(mentions[0].end, 6u);
}

TEST(Scan, NoHits) {
  auto pats = Compile("fortis\tFortis\tcs\n");
  EXPECT_TRUE(ScanCorpus({Doc("d1", "nothing to see")}, pats).empty());
}

using MentionKey = std::tuple<std::string, std::size_t, std::size_t, std::string>;

std::vector<MentionKey> Keys(const std::vector<Mention>& ms) {
  std::vector<MentionKey> out;
  for (const auto& m : ms) out.emplace_back(m.doc_id, m.start, m.end, m.entity_id);
  return out;
}

// Random literal patterns over a three-letter alphabet.
TEST(Scan, MatchesBruteForceLiteralSearch) {
  std::mt19937_64 rng(11);
  const std::string alphabet = "abc ";
  for (int trial = 0; trial < 60; ++trial) {
    struct Lit { std::string entity, text; bool cs; };
    std::vector<Lit> lits;
    std::string file;
    const int n_pat = 2 + static_cast<int>(rng() % 4);
    for (int p = 0; p < n_pat; ++p) {
      Lit l;
      l.entity = (rng() % 2) ? "e1" : "e2";
      const int len = 1 + static_cast<int>(rng() % 3);
      for (int i = 0; i < len; ++i) l.text += (rng() % 2) ? 'a' : ((rng() % 2) ? 'b' : 'C');
      l.cs = rng() % 2;
      lits.push_back(l);
      file += l.entity + "\t" + l.text + "\t" + (l.cs ? "cs" : "ci") + "\n";
    }
    std::vector<Document> docs;
    for (int d = 0; d < 3; ++d) {
      std::string text;
      const int len = static_cast<int>(rng() % 40);
      for (int i = 0; i < len; ++i) {
        char c = alphabet[rng() % alphabet.size()];
        if (c != ' ' && rng() % 3 == 0) c = static_cast<char>(c - 'a' + 'A');
        text += c;
      }
      docs.push_back(Doc("d" + std::to_string(d), text));
    }
    std::set<MentionKey> expected;
    for (const auto& doc : docs) {
      for (const auto& l : lits) {
        for (auto [s, e] : oracle::FindLiteral(doc.text, l.text, l.cs)) {
          expected.emplace(doc.doc_id, s, e, l.entity);
        }
      }
    }
    auto got = Keys(ScanCorpus(docs, Compile(file)));
    EXPECT_EQ(got, std::vector<MentionKey>(expected.begin(), expected.end()))
        << "trial " << trial << "\n" << file;
  }
}

TEST(Scan, ParallelEqualsSequential) {
  auto pats = Compile("x\tab\tci\ny\tb+\tcs\n");
  std::vector<Document> docs;
  for (int i = 0; i < 40; ++i) docs.push_back(Doc("d" + std::to_string(i), std::string(i % 7, 'a') + "Abbb ab"));
  EXPECT_EQ(ScanCorpus(docs, pats, 1), ScanCorpus(docs, pats, 4));
}

TEST(Corpus, JsonlRoundTrip) {
  std::vector<Document> docs = {Doc("a", "Line \"one\"\nwith newline"), Doc("b", "")};
  std::istringstream in(SerializeCorpus(docs));
  auto back = ReadCorpus(in);
  ASSERT_EQ(back.size(), 2u);
  for (auto& d : back) TokenizeDocument(d);
  EXPECT_EQ(back[0].text, docs[0].text);
  EXPECT_EQ(back[0].tokens, docs[0].tokens);
  EXPECT_EQ(back[1].published, docs[1].published);
}

TEST(Csv, SplitInvertsJoin) {
  std::vector<std::string> fields = {"a,b", "\"q\"", "", "plain"};
  EXPECT_EQ(CsvSplit(CsvJoin(fields)), fields);
}

}  // namespace
}  // namespace stressnet
