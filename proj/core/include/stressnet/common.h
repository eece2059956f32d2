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

#ifndef STRESSNET_COMMON_H_
#define STRESSNET_COMMON_H_

#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace stressnet {

// All recoverable failures surface as this exception type; the message is
// meant for the end user.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Date = std::chrono::year_month_day;
using Vector = std::vector<double>;

// Parses an ISO-8601 calendar date (YYYY-MM-DD). Throws Error on malformed
// or invalid dates such as 2009-02-30.
Date ParseDate(std::string_view text);
std::string FormatDate(const Date& date);

// Signed day difference a - b.
int DaysBetween(const Date& a, const Date& b);
Date AddDays(const Date& date, int days);

// Uniform double in [0, 1) from the top 53 bits of a 64-bit engine draw.
inline double UnitInterval(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

inline double Sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

double Dot(std::span<const double> a, std::span<const double> b);
double Cosine(std::span<const double> a, std::span<const double> b);

// Formats a real with 9 significant digits, as used in CSV reports.
std::string FormatReal(double value);
// Shortest text that parses back to exactly `value`.
std::string FormatExact(double value);

// CSV helpers. Fields containing separators, quotes or newlines are quoted.
std::string CsvEscape(std::string_view field);
std::string CsvJoin(std::span<const std::string> fields);
std::vector<std::string> CsvSplit(std::string_view line);

// Reads a CSV file, checks that the header matches `expected_header` and
// returns the data rows.
std::vector<std::vector<std::string>> ReadCsv(
    const std::filesystem::path& path,
    std::span<const std::string> expected_header);

// Writes `content` to a temporary sibling and renames it into place.
void WriteFileAtomic(const std::filesystem::path& path,
                     std::string_view content);
std::string ReadFile(const std::filesystem::path& path);

// 64-bit FNV-1a, used for config fingerprints in run manifests.
std::uint64_t Fnv1a64(std::string_view data);

}  // namespace stressnet

#endif  // STRESSNET_COMMON_H_
