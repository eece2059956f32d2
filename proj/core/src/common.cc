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

#include "stressnet/common.h"

#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace stressnet {
namespace {

int ParseInt(std::string_view text, std::string_view whole) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(fmt::format("invalid date '{}'", whole));
  }
  return value;
}

}  // namespace

Date ParseDate(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
    throw Error(fmt::format("invalid date '{}', expected YYYY-MM-DD", text));
  }
  const int y = ParseInt(text.substr(0, 4), text);
  const int m = ParseInt(text.substr(5, 2), text);
  const int d = ParseInt(text.substr(8, 2), text);
  Date date{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
            std::chrono::day{static_cast<unsigned>(d)}};
  if (!date.ok()) throw Error(fmt::format("invalid calendar date '{}'", text));
  return date;
}

std::string FormatDate(const Date& date) {
  return fmt::format("{:04d}-{:02d}-{:02d}", static_cast<int>(date.year()),
                     static_cast<unsigned>(date.month()),
                     static_cast<unsigned>(date.day()));
}

int DaysBetween(const Date& a, const Date& b) {
  return static_cast<int>(
      (std::chrono::sys_days{a} - std::chrono::sys_days{b}).count());
}

Date AddDays(const Date& date, int days) {
  return Date{std::chrono::sys_days{date} + std::chrono::days{days}};
}

double Dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

double Cosine(std::span<const double> a, std::span<const double> b) {
  const double na = std::sqrt(Dot(a, a));
  const double nb = std::sqrt(Dot(b, b));
  if (na == 0.0 || nb == 0.0) return 0.0;
  return Dot(a, b) / (na * nb);
}

std::string FormatReal(double value) { return fmt::format("{:.9g}", value); }
std::string FormatExact(double value) { return fmt::format("{}", value); }

std::string CsvEscape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string CsvJoin(std::span<const std::string> fields) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) line += ',';
    line += CsvEscape(fields[i]);
  }
  return line;
}

std::vector<std::string> CsvSplit(std::string_view line) {
  // RFC 4180 quoting: a doubled quote inside a quoted field is a literal.
  std::string owned(line);
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < owned.size(); ++i) {
    const char c = owned[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < owned.size() && owned[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field += c;
    }
  }
  if (quoted) throw Error(fmt::format("unterminated quote in CSV line '{}'", line));
  fields.push_back(std::move(field));
  return fields;
}

std::vector<std::vector<std::string>> ReadCsv(
    const std::filesystem::path& path,
    std::span<const std::string> expected_header) {
  std::ifstream in(path);
  if (!in) throw Error(fmt::format("cannot open '{}'", path.string()));
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(fmt::format("'{}' is empty", path.string()));
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = CsvSplit(line);
  if (!std::equal(header.begin(), header.end(), expected_header.begin(),
                  expected_header.end())) {
    throw Error(fmt::format("'{}': unexpected header '{}'", path.string(), line));
  }
  std::vector<std::vector<std::string>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto row = CsvSplit(line);
    if (row.size() != expected_header.size()) {
      throw Error(fmt::format("'{}' line {}: expected {} fields, got {}",
                              path.string(), line_no, expected_header.size(),
                              row.size()));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void WriteFileAtomic(const std::filesystem::path& path,
                     std::string_view content) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(fmt::format("cannot write '{}'", tmp.string()));
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(fmt::format("write failed for '{}'", tmp.string()));
  }
  std::filesystem::rename(tmp, path);
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(fmt::format("cannot open '{}'", path.string()));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::uint64_t Fnv1a64(std::string_view data) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

}  // namespace stressnet
