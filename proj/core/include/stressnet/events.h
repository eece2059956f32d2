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

#ifndef STRESSNET_EVENTS_H_
#define STRESSNET_EVENTS_H_

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "stressnet/common.h"
#include "stressnet/corpus.h"

namespace stressnet {

struct EventRecord {
  std::string entity_id;
  Date event_date;
};

enum class Label { kNonCoinciding = 0, kCoinciding = 1, kAmbiguous = 2 };

struct LabelWindow {
  int near_days = 30;
  int far_days = 90;
};

// Event dates grouped by entity. Rejects duplicate (entity, date) pairs.
class EventRegistry {
 public:
  EventRegistry() = default;
  explicit EventRegistry(std::vector<EventRecord> events);

  const std::vector<Date>& DatesFor(const std::string& entity_id) const;
  const std::vector<EventRecord>& events() const { return events_; }

 private:
  std::vector<EventRecord> events_;
  std::map<std::string, std::vector<Date>> by_entity_;
};

// CSV with header `entity_id,event_date`.
EventRegistry ReadEventsFile(const std::filesystem::path& path);
std::string SerializeEvents(const std::vector<EventRecord>& events);

// Labels by the smallest absolute day distance to any of the entity's
// events: <= near is coinciding, >= far is not, anything between is
// ambiguous. Entities without events are never coinciding.
Label LabelArticle(const Date& published, const std::string& entity_id,
                   const EventRegistry& registry,
                   const LabelWindow& window = {});

struct LabeledCase {
  std::string doc_id;
  std::string entity_id;
  Date published;
  int label = 0;
};

// One case per distinct (doc, entity) mention pair with a definite label,
// ordered by (doc_id, entity_id).
std::vector<LabeledCase> BuildTrainingSet(
    const std::vector<Mention>& mentions,
    const std::map<std::string, const Document*>& docs,
    const EventRegistry& registry, const LabelWindow& window = {});

std::string SerializeCases(const std::vector<LabeledCase>& cases);
std::vector<LabeledCase> ReadCasesFile(const std::filesystem::path& path);

}  // namespace stressnet

#endif  // STRESSNET_EVENTS_H_
