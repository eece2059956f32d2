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

#include "stressnet/events.h"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <set>
#include <tuple>

#include <fmt/format.h>

namespace stressnet {

EventRegistry::EventRegistry(std::vector<EventRecord> events)
    : events_(std::move(events)) {
  for (const auto& event : events_) {
    auto& dates = by_entity_[event.entity_id];
    if (std::find(dates.begin(), dates.end(), event.event_date) != dates.end()) {
      throw Error(fmt::format("duplicate event ({}, {})", event.entity_id,
                              FormatDate(event.event_date)));
    }
    dates.push_back(event.event_date);
  }
  for (auto& [entity, dates] : by_entity_) std::sort(dates.begin(), dates.end());
}

const std::vector<Date>& EventRegistry::DatesFor(
    const std::string& entity_id) const {
  static const std::vector<Date> kNone;
  auto it = by_entity_.find(entity_id);
  return it == by_entity_.end() ? kNone : it->second;
}

EventRegistry ReadEventsFile(const std::filesystem::path& path) {
  static const std::vector<std::string> kHeader = {"entity_id", "event_date"};
  std::vector<EventRecord> events;
  for (const auto& row : ReadCsv(path, kHeader)) {
    events.push_back(EventRecord{row[0], ParseDate(row[1])});
  }
  return EventRegistry(std::move(events));
}

std::string SerializeEvents(const std::vector<EventRecord>& events) {
  std::string out = "entity_id,event_date\n";
  for (const auto& e : events) {
    const std::vector<std::string> row = {e.entity_id, FormatDate(e.event_date)};
    out += CsvJoin(row);
    out += '\n';
  }
  return out;
}

Label LabelArticle(const Date& published, const std::string& entity_id,
                   const EventRegistry& registry, const LabelWindow& window) {
  if (window.near_days >= window.far_days) {
    throw Error("label window requires near_days < far_days");
  }
  const auto& dates = registry.DatesFor(entity_id);
  if (dates.empty()) return Label::kNonCoinciding;
  int closest = std::numeric_limits<int>::max();
  for (const auto& date : dates) {
    closest = std::min(closest, std::abs(DaysBetween(published, date)));
  }
  if (closest <= window.near_days) return Label::kCoinciding;
  if (closest >= window.far_days) return Label::kNonCoinciding;
  return Label::kAmbiguous;
}

std::vector<LabeledCase> BuildTrainingSet(
    const std::vector<Mention>& mentions,
    const std::map<std::string, const Document*>& docs,
    const EventRegistry& registry, const LabelWindow& window) {
  std::set<std::pair<std::string, std::string>> pairs;
  for (const auto& m : mentions) {
    if (!docs.contains(m.doc_id)) {
      throw Error(fmt::format("mention refers to unknown doc_id '{}'", m.doc_id));
    }
    pairs.emplace(m.doc_id, m.entity_id);
  }
  std::vector<LabeledCase> cases;
  for (const auto& [doc_id, entity_id] : pairs) {
    const Document& doc = *docs.at(doc_id);
    const Label label = LabelArticle(doc.published, entity_id, registry, window);
    if (label == Label::kAmbiguous) continue;
    cases.push_back(LabeledCase{doc_id, entity_id, doc.published,
                                label == Label::kCoinciding ? 1 : 0});
  }
  return cases;
}

std::string SerializeCases(const std::vector<LabeledCase>& cases) {
  std::string out = "doc_id,entity_id,published,label\n";
  for (const auto& c : cases) {
    const std::vector<std::string> row = {c.doc_id, c.entity_id,
                                          FormatDate(c.published),
                                          std::to_string(c.label)};
    out += CsvJoin(row);
    out += '\n';
  }
  return out;
}

std::vector<LabeledCase> ReadCasesFile(const std::filesystem::path& path) {
  static const std::vector<std::string> kHeader = {"doc_id", "entity_id",
                                                   "published", "label"};
  std::vector<LabeledCase> cases;
  for (const auto& row : ReadCsv(path, kHeader)) {
    if (row[3] != "0" && row[3] != "1") {
      throw Error(fmt::format("'{}': label must be 0 or 1", path.string()));
    }
    cases.push_back(
        LabeledCase{row[0], row[1], ParseDate(row[2]), row[3] == "1" ? 1 : 0});
  }
  return cases;
}

}  // namespace stressnet
