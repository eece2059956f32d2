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

#ifndef STRESSNET_STRESS_INDEX_H_
#define STRESSNET_STRESS_INDEX_H_

#include <compare>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stressnet/common.h"

namespace stressnet {

enum class PeriodKind { kMonth, kQuarter };

// A calendar month ("2008-09") or quarter ("2008-Q3").
struct Period {
  int year = 0;
  int number = 1;  // month 1..12 or quarter 1..4
  PeriodKind kind = PeriodKind::kMonth;

  static Period Of(const Date& date, PeriodKind kind = PeriodKind::kMonth);
  static Period Parse(std::string_view text);
  std::string ToString() const;

  friend auto operator<=>(const Period&, const Period&) = default;
};

struct ScoredArticle {
  std::string doc_id;
  std::string entity_id;
  Period period;
  double score = 0.0;
};

struct IndexCell {
  double value = 0.0;
  int count = 0;
};

// I(p, b): mean article score per (period, entity). Missing cells have no
// entry.
class StressIndexSeries {
 public:
  using Key = std::pair<Period, std::string>;

  const std::map<Key, IndexCell>& cells() const { return cells_; }
  std::optional<IndexCell> Find(const Period& period,
                                const std::string& entity) const;
  void Set(const Period& period, const std::string& entity, IndexCell cell);

  // CSV `period,entity_id,index,count`.
  std::string Serialize() const;
  static StressIndexSeries Read(const std::filesystem::path& path);

 private:
  std::map<Key, IndexCell> cells_;
};

// Mean score of the articles matching (period, entity); nullopt when there
// are none.
std::optional<double> StressIndex(std::span<const ScoredArticle> scores,
                                  const Period& period,
                                  const std::string& entity);

StressIndexSeries BuildSeries(std::span<const ScoredArticle> scores);

struct CrossSectionRow {
  Period period;
  int entities = 0;
  double mean = 0.0;
  std::vector<double> percentiles;  // aligned with the requested list
};

// Nearest-rank percentile of sorted values: the element at rank
// ceil(p/100 * n), with rank clamped to [1, n].
double NearestRankPercentile(std::span<const double> sorted, double p);

// Mean and percentiles over entities per period; periods without data
// are omitted. Throws Error for percentiles outside [0, 100].
std::vector<CrossSectionRow> CrossSectionStats(
    const StressIndexSeries& series, std::span<const double> percentiles);

// Percentiles 2.5, 5, ..., 97.5.
std::vector<double> DefaultPercentiles();

std::string SerializeCrossSection(const std::vector<CrossSectionRow>& rows,
                                  std::span<const double> percentiles);

std::string SerializeScores(std::span<const ScoredArticle> scores);
std::vector<ScoredArticle> ReadScoresFile(const std::filesystem::path& path);

}  // namespace stressnet

#endif  // STRESSNET_STRESS_INDEX_H_
