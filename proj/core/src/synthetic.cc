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

#include "stressnet/synthetic.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>
#include <set>

#include <fmt/format.h>

namespace stressnet {
namespace {

const char* const kEntityNames[] = {
    "Alpha",    "Borealis", "Castor",   "Delmont",  "Everest",  "Fairhaven",
    "Granite",  "Harbor",   "Ironwood", "Juniper",  "Kestrel",  "Lakeside",
    "Meridian", "Northgate", "Oakridge", "Pinnacle", "Quarry",   "Redwood",
    "Summit",   "Tidewater", "Upland",   "Valemont", "Westbrook", "Yarrow"};

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double Uniform() { return UnitInterval(engine_()); }
  bool Bernoulli(double p) { return Uniform() < p; }
  // Uniform integer in [lo, hi].
  int Int(int lo, int hi) {
    return lo + static_cast<int>(Uniform() * (hi - lo + 1));
  }
  template <typename T>
  const T& Pick(const std::vector<T>& items) {
    return items[static_cast<std::size_t>(Uniform() * items.size())];
  }

 private:
  std::mt19937_64 engine_;
};

int MinDistance(const Date& date, const std::vector<Date>& events) {
  int best = std::numeric_limits<int>::max();
  for (const auto& e : events) best = std::min(best, std::abs(DaysBetween(date, e)));
  return best;
}

// "Alpha" -> "ALP"
std::string TickerStem(const std::string& name) {
  std::string stem = name.substr(0, 3);
  for (char& c : stem) {
    c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  }
  return stem;
}

std::string Capitalize(std::string word) {
  if (!word.empty() && word[0] >= 'a' && word[0] <= 'z') {
    word[0] = static_cast<char>(word[0] - 'a' + 'A');
  }
  return word;
}

}  // namespace

SyntheticSpec SyntheticSpec::Default() {
  SyntheticSpec spec;
  spec.distress_lexicon = {
      "bailout",     "nationalisation", "rescue",     "insolvency",
      "writedown",   "recapitalisation", "downgrade", "default",
      "intervention", "liquidity",      "collapse",   "emergency"};
  spec.neutral_lexicon = {
      "market",     "shares",     "quarter",    "profit",     "revenue",
      "customers",  "branch",     "lending",    "mortgage",   "deposits",
      "investors",  "analysts",   "board",      "chairman",   "executive",
      "strategy",   "growth",     "expansion",  "office",     "digital",
      "services",   "products",   "retail",     "corporate",  "clients",
      "trading",    "bonds",      "currency",   "euro",       "dollar",
      "index",      "stocks",     "exchange",   "results",    "earnings",
      "dividend",   "annual",     "meeting",    "report",     "forecast",
      "economy",    "inflation",  "rates",      "central",    "policy",
      "consumer",   "spending",   "housing",    "prices",     "sales",
      "insurance",  "assets",     "management", "fund",       "portfolio",
      "partnership", "agreement", "acquisition", "technology", "platform",
      "payments",   "cards",      "savings",    "accounts",   "network",
      "employees",  "hiring",     "training",   "sponsorship", "conference",
      "regional",   "national",   "international", "europe",  "asia",
      "america",    "london",     "frankfurt",  "paris",      "brussels",
      "amsterdam",  "madrid",     "milan",      "zurich",     "dublin",
      "monday",     "tuesday",    "wednesday",  "thursday",   "friday",
      "morning",    "week",       "month",      "year",       "statement",
      "spokesman",  "interview",  "newspaper",  "comments",   "outlook",
      "target",     "volume",     "capital",    "margin",     "costs",
      "income",     "fees",       "commission", "advisory",   "wealth",
      "private",    "public",     "offering",   "listing",    "merger",
      "integration", "systems",   "project",    "launch",     "brand",
      "campaign",   "sector",     "industry",   "competition", "peers",
      "rivals",     "leader",     "position",   "share",      "stake",
      "holding",    "group",      "unit",       "division",   "subsidiary",
      "operations", "region",     "country",    "city",       "headquarters",
      "building",   "property",   "real",       "estate",     "construction",
      "energy",     "shipping",   "agriculture", "transport", "retailers",
      "manufacturing", "exports", "imports",    "trade",      "tariffs",
      "budget",     "government", "minister",   "election",   "parliament",
      "regulator",  "rules",      "reform",     "compliance", "audit",
      "accounting", "tax",        "pension",    "bonus",      "salary",
      "staff",      "union",      "talks",      "deal",       "plan",
      "review",     "update",     "guidance",   "estimate",   "survey",
      "data",       "figures",    "percent",    "billion",    "million"};
  spec.function_words = {"the",  "of",   "and",   "to",    "in",   "a",
                         "for",  "on",   "that",  "with",  "as",   "by",
                         "at",   "from", "is",    "was",   "its",  "it",
                         "said", "has",  "have",  "be",    "will", "an",
                         "which", "this", "are",  "were",  "after", "over"};
  return spec;
}

void SyntheticSpec::Validate() const {
  if (n_docs < 1) throw Error("synthetic spec needs at least one document");
  if (n_entities < 1 ||
      n_entities > static_cast<int>(std::size(kEntityNames))) {
    throw Error(fmt::format("synthetic spec supports 1..{} entities",
                            std::size(kEntityNames)));
  }
  if (months < 6) throw Error("synthetic spec needs at least 6 months");
  if (events_per_entity < 0) throw Error("events_per_entity must be >= 0");
  for (double rate : {event_doc_fraction, ambiguous_doc_fraction,
                      second_entity_rate, injection_rate, injection_density,
                      background_distress_rate}) {
    if (!(rate >= 0.0 && rate <= 1.0)) throw Error("rates must lie in [0, 1]");
  }
  if (event_doc_fraction + ambiguous_doc_fraction > 1.0) {
    throw Error("event and ambiguous document fractions exceed 1");
  }
  if (min_doc_tokens < 4 || max_doc_tokens < min_doc_tokens) {
    throw Error("document length range is invalid");
  }
  if (distress_lexicon.empty() || neutral_lexicon.empty() ||
      function_words.empty()) {
    throw Error("lexicons must be non-empty");
  }
  std::set<std::string> seen;
  for (const auto* lexicon : {&distress_lexicon, &neutral_lexicon, &function_words}) {
    for (const auto& word : *lexicon) {
      if (Tokenize(word) != std::vector<std::string>{word}) {
        throw Error(fmt::format("lexicon entry '{}' is not a single token", word));
      }
      if (!seen.insert(word).second) {
        throw Error(fmt::format("lexicons overlap on '{}'", word));
      }
    }
  }
}

SyntheticCorpus GenerateSynthetic(const SyntheticSpec& spec) {
  spec.Validate();
  Rng rng(spec.seed);
  SyntheticCorpus out;

  const Date end = Date{std::chrono::sys_days{spec.start} +
                        std::chrono::days{static_cast<int>(spec.months * 30.44)}};
  const int span_days = DaysBetween(end, spec.start);
  const LabelWindow window;

  std::vector<std::string> names;
  std::vector<std::vector<Date>> event_dates(spec.n_entities);
  for (int e = 0; e < spec.n_entities; ++e) {
    names.emplace_back(kEntityNames[e]);
    std::string id = names.back();
    std::transform(id.begin(), id.end(), id.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    out.entity_ids.push_back(id);
    out.patterns += fmt::format("{}\t\\b{}(\\s+Bank)?\\b\tci\n", id, names.back());
    out.patterns += fmt::format("{}\t\\b{}\\.[A-Z]{{2}}\\b\tcs\n", id,
                                TickerStem(names.back()));
    // Minimum spacing between one entity's events.
    const int min_gap = 2 * window.far_days + 30;
    for (int k = 0; k < spec.events_per_entity; ++k) {
      bool placed = false;
      for (int attempt = 0; attempt < 1000 && !placed; ++attempt) {
        const Date candidate = AddDays(spec.start, rng.Int(45, span_days - 45));
        if (MinDistance(candidate, event_dates[e]) >= min_gap) {
          event_dates[e].push_back(candidate);
          placed = true;
        }
      }
      if (!placed) {
        throw Error("cannot place the requested events within the time span");
      }
    }
    std::sort(event_dates[e].begin(), event_dates[e].end());
    for (const auto& d : event_dates[e]) out.events.push_back({id, d});
  }
  std::sort(out.events.begin(), out.events.end(),
            [](const EventRecord& a, const EventRecord& b) {
              return std::tie(a.event_date, a.entity_id) <
                     std::tie(b.event_date, b.entity_id);
            });

  auto ticker = [&](int e) { return TickerStem(names[e]) + ".BR"; };
  auto mention_text = [&](int e) -> std::string {
    const double r = rng.Uniform();
    if (r < 0.6) return names[e] + " Bank";
    if (r < 0.9) return names[e];
    return ticker(e);
  };

  for (int i = 0; i < spec.n_docs; ++i) {
    const int primary = rng.Int(0, spec.n_entities - 1);
    const auto& events = event_dates[primary];
    const double kind = rng.Uniform();
    Date published;
    if (!events.empty() && kind < spec.event_doc_fraction) {
      published = AddDays(rng.Pick(events),
                          rng.Int(-window.near_days, window.near_days));
    } else if (!events.empty() &&
               kind < spec.event_doc_fraction + spec.ambiguous_doc_fraction) {
      const int offset = rng.Int(window.near_days + 1, window.far_days - 1);
      published = AddDays(rng.Pick(events), rng.Bernoulli(0.5) ? offset : -offset);
    } else {
      for (int attempt = 0;; ++attempt) {
        published = AddDays(spec.start, rng.Int(0, span_days - 1));
        if (MinDistance(published, events) >= window.far_days) break;
        if (attempt > 10000) throw Error("cannot place a non-event document");
      }
    }
    const bool near = !events.empty() &&
                      MinDistance(published, events) <= window.near_days;
    const bool injected = near && rng.Bernoulli(spec.injection_rate);

    int secondary = -1;
    if (spec.n_entities > 1 && rng.Bernoulli(spec.second_entity_rate)) {
      secondary = rng.Int(0, spec.n_entities - 2);
      if (secondary >= primary) ++secondary;
    }

    const int target_tokens = rng.Int(spec.min_doc_tokens, spec.max_doc_tokens);
    std::vector<std::string> injected_words;
    std::vector<std::string> sentences;
    int produced = 0;
    bool secondary_done = secondary < 0;
    while (produced < target_tokens) {
      std::vector<std::string> words;
      if (sentences.empty()) {
        words.push_back(mention_text(primary));
      } else if (rng.Bernoulli(0.25)) {
        words.push_back(mention_text(primary));
      } else if (!secondary_done && rng.Bernoulli(0.4)) {
        words.push_back(mention_text(secondary));
        secondary_done = true;
      }
      const int length = rng.Int(8, 16);
      for (int w = 0; w < length; ++w) {
        if (rng.Bernoulli(0.35)) {
          words.push_back(rng.Pick(spec.function_words));
        } else if ((injected && rng.Bernoulli(spec.injection_density)) ||
                   rng.Bernoulli(spec.background_distress_rate)) {
          const auto& word = rng.Pick(spec.distress_lexicon);
          if (injected) injected_words.push_back(word);
          words.push_back(word);
        } else {
          words.push_back(rng.Pick(spec.neutral_lexicon));
        }
      }
      produced += length;
      std::string sentence = Capitalize(words[0]);
      for (std::size_t w = 1; w < words.size(); ++w) {
        sentence += (w == words.size() / 2 && rng.Bernoulli(0.3)) ? ", " : " ";
        sentence += words[w];
      }
      sentence += '.';
      sentences.push_back(std::move(sentence));
    }
    if (!secondary_done) sentences.push_back(mention_text(secondary) + " declined to comment.");
    if (injected && injected_words.empty()) {
      injected_words.push_back(rng.Pick(spec.distress_lexicon));
      sentences.push_back(Capitalize(injected_words.back()) + '.');
    }

    Document doc;
    doc.doc_id = fmt::format("doc{:06d}", i + 1);
    doc.published = published;
    for (std::size_t s = 0; s < sentences.size(); ++s) {
      if (s) doc.text += ' ';
      doc.text += sentences[s];
    }

    auto intended = [&](int e) {
      const int d = MinDistance(published, event_dates[e]);
      if (event_dates[e].empty() || d >= window.far_days) return 0;
      return d <= window.near_days ? 1 : 2;
    };
    out.truth.push_back({doc.doc_id, out.entity_ids[primary], intended(primary),
                         injected_words});
    if (secondary >= 0) {
      out.truth.push_back({doc.doc_id, out.entity_ids[secondary],
                           intended(secondary), {}});
    }
    TokenizeDocument(doc);
    out.docs.push_back(std::move(doc));
  }

  for (const auto& word : spec.function_words) out.stopwords += word + "\n";
  return out;
}

SyntheticPaths WriteSynthetic(const SyntheticCorpus& corpus,
                              const std::filesystem::path& dir) {
  SyntheticPaths paths{dir / "corpus.jsonl", dir / "events.csv",
                       dir / "patterns.tsv", dir / "stopwords.txt",
                       dir / "truth.csv"};
  WriteFileAtomic(paths.corpus, SerializeCorpus(corpus.docs));
  WriteFileAtomic(paths.events, SerializeEvents(corpus.events));
  WriteFileAtomic(paths.patterns, corpus.patterns);
  WriteFileAtomic(paths.stopwords, corpus.stopwords);
  std::string truth = "doc_id,entity_id,intended_label,injected\n";
  for (const auto& t : corpus.truth) {
    std::string injected;
    for (std::size_t i = 0; i < t.injected.size(); ++i) {
      if (i) injected += ' ';
      injected += t.injected[i];
    }
    const std::vector<std::string> row = {t.doc_id, t.entity_id,
                                          std::to_string(t.intended_label),
                                          injected};
    truth += CsvJoin(row);
    truth += '\n';
  }
  WriteFileAtomic(paths.truth, truth);
  return paths;
}

}  // namespace stressnet
