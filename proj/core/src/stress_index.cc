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

#include "stressnet/stress_index.h"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace stressnet {

Period Period::Of(const Date& date, PeriodKind kind) {
  const int year = static_cast<int>(date.year());
  const int month = static_cast<int>(static_cast<unsigned>(date.month()));
  if (kind == PeriodKind::kQuarter) return {year, (month - 1) / 3 + 1, kind};
  return {year, month, kind};
}

Period Period::Parse(std::string_view text) {
  auto bad = [&] { return Error(fmt::format("invalid period '{}'", text)); };
  if (text.size() < 6 || text[4] != '-') throw bad();
  int year = 0;
  try {
    year = std::stoi(std::string(text.substr(0, 4)));
    if (text[5] == 'Q') {
      if (text.size() != 7) throw bad();
      const int q = text[6] - '0';
      if (q < 1 || q > 4) throw bad();
      return {year, q, PeriodKind::kQuarter};
    }
    if (text.size() != 7) throw bad();
    const int month = std::stoi(std::string(text.substr(5, 2)));
    if (month < 1 || month > 12) throw bad();
    return {year, month, PeriodKind::kMonth};
  } catch (const std::logic_error&) {
    throw bad();
  }
}

std::string Period::ToString() const {
  if (kind == PeriodKind::kQuarter) return fmt::format("{:04d}-Q{}", year, number);
  return fmt::format("{:04d}-{:02d}", year, number);
}

std::optional<IndexCell> StressIndexSeries::Find(const Period& period,
                                                 const std::string& entity) const {
  auto it = cells_.find({period, entity});
  if (it == cells_.end()) return std::nullopt;
  return it->second;
}

void StressIndexSeries::Set(const Period& period, const std::string& entity,
                            IndexCell cell) {
  if (cell.count < 1 || !(cell.value >= 0.0 && cell.value <= 1.0)) {
    throw Error("index cells need count >= 1 and a value in [0, 1]");
  }
  cells_[{period, entity}] = cell;
}

std::string StressIndexSeries::Serialize() const {
  std::string out = "period,entity_id,index,count\n";
  for (const auto& [key, cell] : cells_) {
    const std::vector<std::string> row = {key.first.ToString(), key.second,
                                          FormatReal(cell.value),
                                          std::to_string(cell.count)};
    out += CsvJoin(row);
    out += '\n';
  }
  return out;
}

StressIndexSeries StressIndexSeries::Read(const std::filesystem::path& path) {
  static const std::vector<std::string> kHeader = {"period", "entity_id",
                                                   "index", "count"};
  StressIndexSeries series;
  for (const auto& row : ReadCsv(path, kHeader)) {
    series.Set(Period::Parse(row[0]), row[1],
               IndexCell{std::stod(row[2]), std::stoi(row[3])});
  }
  return series;
}

std::optional<double> StressIndex(std::span<const ScoredArticle> scores,
                                  const Period& period,
                                  const std::string& entity) {
  double sum = 0.0;
  int count = 0;
  for (const auto& s : scores) {
    if (s.period == period && s.entity_id == entity) {
      sum += s.score;
      ++count;
    }
  }
  if (count == 0) return std::nullopt;
  return sum / count;
}

StressIndexSeries BuildSeries(std::span<const ScoredArticle> scores) {
  std::map<StressIndexSeries::Key, std::pair<double, int>> sums;
  for (const auto& s : scores) {
    auto& [sum, count] = sums[{s.period, s.entity_id}];
    sum += s.score;
    ++count;
  }
  StressIndexSeries series;
  for (const auto& [key, acc] : sums) {
    series.Set(key.first, key.second,
               IndexCell{std::clamp(acc.first / acc.second, 0.0, 1.0),
                         acc.second});
  }
  return series;
}

double NearestRankPercentile(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw Error("percentile of an empty sample");
  const double n = static_cast<double>(sorted.size());
  auto rank = static_cast<std::size_t>(std::ceil(p / 100.0 * n));
  rank = std::clamp<std::size_t>(rank, 1, sorted.size());
  return sorted[rank - 1];
}

std::vector<CrossSectionRow> CrossSectionStats(
    const StressIndexSeries& series, std::span<const double> percentiles) {
  for (double p : percentiles) {
    if (!(p >= 0.0 && p <= 100.0)) {
      throw Error(fmt::format("percentile {} outside [0, 100]", p));
    }
  }
  std::map<Period, std::vector<double>> by_period;
  for (const auto& [key, cell] : series.cells()) {
    by_period[key.first].push_back(cell.value);
  }
  std::vector<CrossSectionRow> rows;
  for (auto& [period, values] : by_period) {
    std::sort(values.begin(), values.end());
    CrossSectionRow row;
    row.period = period;
    row.entities = static_cast<int>(values.size());
    double sum = 0.0;
    for (double v : values) sum += v;
    row.mean = sum / static_cast<double>(values.size());
    for (double p : percentiles) {
      row.percentiles.push_back(NearestRankPercentile(values, p));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<double> DefaultPercentiles() {
  std::vector<double> out;
  for (int i = 1; i < 40; ++i) out.push_back(2.5 * i);
  return out;
}

std::string SerializeCrossSection(const std::vector<CrossSectionRow>& rows,
                                  std::span<const double> percentiles) {
  std::string out = "period,mean";
  for (double p : percentiles) out += fmt::format(",p{}", p);
  out += '\n';
  for (const auto& row : rows) {
    out += row.period.ToString();
    out += ',';
    out += FormatReal(row.mean);
    for (double v : row.percentiles) {
      out += ',';
      out += FormatReal(v);
    }
    out += '\n';
  }
  return out;
}

std::string SerializeScores(std::span<const ScoredArticle> scores) {
  std::string out = "doc_id,entity_id,period,score\n";
  for (const auto& s : scores) {
    const std::vector<std::string> row = {s.doc_id, s.entity_id,
                                          s.period.ToString(),
                                          FormatReal(s.score)};
    out += CsvJoin(row);
    out += '\n';
  }
  return out;
}

std::vector<ScoredArticle> ReadScoresFile(const std::filesystem::path& path) {
  static const std::vector<std::string> kHeader = {"doc_id", "entity_id",
                                                   "period", "score"};
  std::vector<ScoredArticle> scores;
  for (const auto& row : ReadCsv(path, kHeader)) {
    scores.push_back(ScoredArticle{row[0], row[1], Period::Parse(row[2]),
                                   std::stod(row[3])});
  }
  return scores;
}

}  // namespace stressnet
