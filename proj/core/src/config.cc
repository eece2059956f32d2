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

#include "stressnet/config.h"

#include <functional>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "stressnet/evaluate.h"

namespace stressnet {
namespace {

struct Binding {
  std::string section;
  std::string key;
  std::function<void(PipelineConfig&, const std::string&)> set;
  std::function<std::string(const PipelineConfig&)> get;
};

template <typename T>
T ParseNumber(const std::string& text) {
  std::istringstream in(text);
  T value{};
  if (!(in >> value) || !(in >> std::ws).eof()) {
    throw Error(fmt::format("invalid number '{}'", text));
  }
  return value;
}

template <typename T>
std::vector<T> ParseList(const std::string& text) {
  std::vector<std::string> parts;
  boost::split(parts, text, boost::is_any_of(","));
  std::vector<T> out;
  for (auto& part : parts) {
    boost::trim(part);
    if (!part.empty()) out.push_back(ParseNumber<T>(part));
  }
  if (out.empty()) throw Error(fmt::format("empty list '{}'", text));
  return out;
}

template <typename T>
std::string FormatList(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ",";
    if constexpr (std::is_floating_point_v<T>) {
      out += FormatReal(values[i]);
    } else {
      out += std::to_string(values[i]);
    }
  }
  return out;
}

bool ParseBool(const std::string& text) {
  const auto v = boost::to_lower_copy(text);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw Error(fmt::format("invalid boolean '{}'", text));
}

// Binds a numeric member reached through `member`.
template <typename T, typename Access>
Binding Num(std::string section, std::string key, Access member) {
  return Binding{
      std::move(section), std::move(key),
      [member](PipelineConfig& c, const std::string& v) {
        member(c) = ParseNumber<T>(v);
      },
      [member](const PipelineConfig& c) {
        const T& value = member(const_cast<PipelineConfig&>(c));
        if constexpr (std::is_floating_point_v<T>) {
          return FormatReal(value);
        } else {
          return std::to_string(value);
        }
      }};
}

template <typename Access>
Binding PathB(std::string key, Access member) {
  return Binding{"paths", std::move(key),
                 [member](PipelineConfig& c, const std::string& v) {
                   member(c) = std::filesystem::path(v);
                 },
                 [member](const PipelineConfig& c) {
                   return member(const_cast<PipelineConfig&>(c)).string();
                 }};
}

template <typename T, typename Access>
Binding ListB(std::string section, std::string key, Access member) {
  return Binding{std::move(section), std::move(key),
                 [member](PipelineConfig& c, const std::string& v) {
                   member(c) = ParseList<T>(v);
                 },
                 [member](const PipelineConfig& c) {
                   return FormatList(member(const_cast<PipelineConfig&>(c)));
                 }};
}

std::vector<Binding> Bindings() {
  using C = PipelineConfig;
  std::vector<Binding> b;
  b.push_back(Num<std::uint64_t>("general", "seed", [](C& c) -> auto& { return c.seed; }));
  b.push_back(Binding{"general", "deterministic",
                      [](C& c, const std::string& v) { c.deterministic = ParseBool(v); },
                      [](const C& c) { return std::string(c.deterministic ? "true" : "false"); }});

  b.push_back(PathB("corpus", [](C& c) -> auto& { return c.paths.corpus; }));
  b.push_back(PathB("events", [](C& c) -> auto& { return c.paths.events; }));
  b.push_back(PathB("patterns", [](C& c) -> auto& { return c.paths.patterns; }));
  b.push_back(PathB("stopwords", [](C& c) -> auto& { return c.paths.stopwords; }));
  b.push_back(PathB("output", [](C& c) -> auto& { return c.paths.output; }));

  b.push_back(Num<int>("semantics", "dim", [](C& c) -> auto& { return c.semantics.dim; }));
  b.push_back(Num<int>("semantics", "context_n", [](C& c) -> auto& { return c.semantics.context_n; }));
  b.push_back(Num<std::int64_t>("semantics", "min_count", [](C& c) -> auto& { return c.semantics.min_count; }));
  b.push_back(Num<int>("semantics", "epochs", [](C& c) -> auto& { return c.semantics.epochs; }));
  b.push_back(Num<double>("semantics", "initial_learning_rate", [](C& c) -> auto& { return c.semantics.initial_learning_rate; }));
  b.push_back(Num<double>("semantics", "final_learning_rate", [](C& c) -> auto& { return c.semantics.final_learning_rate; }));
  b.push_back(Num<unsigned>("semantics", "threads", [](C& c) -> auto& { return c.semantics.threads; }));

  b.push_back(Num<int>("predictor", "hidden", [](C& c) -> auto& { return c.predictor.hidden_dim; }));
  b.push_back(Num<int>("predictor", "epochs", [](C& c) -> auto& { return c.predictor.epochs; }));
  b.push_back(Num<double>("predictor", "learning_rate", [](C& c) -> auto& { return c.predictor.learning_rate; }));

  b.push_back(Num<int>("labeling", "near_days", [](C& c) -> auto& { return c.labeling.near_days; }));
  b.push_back(Num<int>("labeling", "far_days", [](C& c) -> auto& { return c.labeling.far_days; }));

  b.push_back(Binding{"index", "period",
                      [](C& c, const std::string& v) {
                        if (v == "month") c.period = PeriodKind::kMonth;
                        else if (v == "quarter") c.period = PeriodKind::kQuarter;
                        else throw Error("index.period must be month or quarter");
                      },
                      [](const C& c) {
                        return std::string(c.period == PeriodKind::kMonth ? "month" : "quarter");
                      }});
  b.push_back(ListB<double>("index", "percentiles", [](C& c) -> auto& { return c.percentiles; }));

  b.push_back(Binding{"describe", "group",
                      [](C& c, const std::string& v) {
                        if (v == "period") c.describe.group = GroupMode::kPeriod;
                        else if (v == "period_entity") c.describe.group = GroupMode::kPeriodEntity;
                        else throw Error("describe.group must be period or period_entity");
                      },
                      [](const C& c) {
                        return std::string(c.describe.group == GroupMode::kPeriod ? "period" : "period_entity");
                      }});
  b.push_back(Num<int>("describe", "keywords_k", [](C& c) -> auto& { return c.describe.keywords_k; }));
  b.push_back(Num<int>("describe", "top_groups", [](C& c) -> auto& { return c.describe.top_groups; }));
  b.push_back(Num<int>("describe", "window", [](C& c) -> auto& { return c.describe.excerpts.window; }));
  b.push_back(Num<double>("describe", "max_overlap", [](C& c) -> auto& { return c.describe.excerpts.max_overlap; }));
  b.push_back(Num<double>("describe", "upweight", [](C& c) -> auto& { return c.describe.excerpts.upweight; }));
  b.push_back(Num<int>("describe", "k", [](C& c) -> auto& { return c.describe.excerpts.k; }));
  b.push_back(Binding{"describe", "entity_mode",
                      [](C& c, const std::string& v) {
                        auto& mode = c.describe.excerpts.entity_mode;
                        if (v == "off") mode = EntityMode::kOff;
                        else if (v == "require") mode = EntityMode::kRequire;
                        else if (v == "upweight") mode = EntityMode::kUpweight;
                        else throw Error("describe.entity_mode must be off, require or upweight");
                      },
                      [](const C& c) {
                        switch (c.describe.excerpts.entity_mode) {
                          case EntityMode::kOff: return std::string("off");
                          case EntityMode::kRequire: return std::string("require");
                          case EntityMode::kUpweight: return std::string("upweight");
                        }
                        return std::string();
                      }});

  b.push_back(Num<int>("evaluate", "folds", [](C& c) -> auto& { return c.evaluate.folds; }));
  b.push_back(ListB<double>("evaluate", "mu_grid", [](C& c) -> auto& { return c.evaluate.mu_grid; }));
  b.push_back(ListB<int>("evaluate", "hidden_grid", [](C& c) -> auto& { return c.evaluate.hidden_grid; }));
  b.push_back(ListB<double>("evaluate", "learning_rate_grid", [](C& c) -> auto& { return c.evaluate.learning_rate_grid; }));
  b.push_back(ListB<int>("evaluate", "epoch_grid", [](C& c) -> auto& { return c.evaluate.epoch_grid; }));

  b.push_back(Num<int>("synth", "n_entities", [](C& c) -> auto& { return c.synth.n_entities; }));
  b.push_back(Num<int>("synth", "n_docs", [](C& c) -> auto& { return c.synth.n_docs; }));
  b.push_back(Binding{"synth", "start",
                      [](C& c, const std::string& v) { c.synth.start = ParseDate(v); },
                      [](const C& c) { return FormatDate(c.synth.start); }});
  b.push_back(Num<int>("synth", "months", [](C& c) -> auto& { return c.synth.months; }));
  b.push_back(Num<int>("synth", "events_per_entity", [](C& c) -> auto& { return c.synth.events_per_entity; }));
  b.push_back(Num<double>("synth", "event_doc_fraction", [](C& c) -> auto& { return c.synth.event_doc_fraction; }));
  b.push_back(Num<double>("synth", "ambiguous_doc_fraction", [](C& c) -> auto& { return c.synth.ambiguous_doc_fraction; }));
  b.push_back(Num<double>("synth", "second_entity_rate", [](C& c) -> auto& { return c.synth.second_entity_rate; }));
  b.push_back(Num<double>("synth", "injection_rate", [](C& c) -> auto& { return c.synth.injection_rate; }));
  b.push_back(Num<double>("synth", "injection_density", [](C& c) -> auto& { return c.synth.injection_density; }));
  b.push_back(Num<double>("synth", "background_distress_rate", [](C& c) -> auto& { return c.synth.background_distress_rate; }));
  b.push_back(Num<int>("synth", "min_doc_tokens", [](C& c) -> auto& { return c.synth.min_doc_tokens; }));
  b.push_back(Num<int>("synth", "max_doc_tokens", [](C& c) -> auto& { return c.synth.max_doc_tokens; }));
  return b;
}

}  // namespace

TrainParams PipelineConfig::EffectiveSemantics() const {
  TrainParams p = semantics;
  p.rng_seed = seed;
  if (deterministic) p.threads = 1;
  return p;
}

ClassifierParams PipelineConfig::EffectivePredictor() const {
  ClassifierParams p = predictor;
  p.seed = seed + 1;
  return p;
}

std::vector<ClassifierParams> PipelineConfig::EvaluationCandidates() const {
  std::vector<ClassifierParams> out;
  for (int hidden : evaluate.hidden_grid) {
    for (double lr : evaluate.learning_rate_grid) {
      for (int epochs : evaluate.epoch_grid) {
        out.push_back(ClassifierParams{hidden, epochs, lr, seed + 1});
      }
    }
  }
  return out;
}

void PipelineConfig::Validate() const {
  ValidateTrainParams(semantics);
  if (predictor.hidden_dim < 1 || predictor.epochs < 1 ||
      !(predictor.learning_rate > 0.0)) {
    throw Error("predictor: hidden, epochs and learning_rate must be positive");
  }
  if (labeling.near_days < 0 || labeling.near_days >= labeling.far_days) {
    throw Error("labeling: need 0 <= near_days < far_days");
  }
  for (double p : percentiles) {
    if (!(p >= 0.0 && p <= 100.0)) throw Error("index: percentiles must lie in [0, 100]");
  }
  if (describe.keywords_k < 1) throw Error("describe: keywords_k must be >= 1");
  if (describe.top_groups < 0) throw Error("describe: top_groups must be >= 0");
  ValidateExcerptOptions(describe.excerpts);
  if (evaluate.folds < 3) throw Error("evaluate: folds must be >= 3");
  for (double mu : evaluate.mu_grid) (void)Preference(mu);
  for (int h : evaluate.hidden_grid) {
    if (h < 1) throw Error("evaluate: hidden_grid entries must be positive");
  }
  for (double lr : evaluate.learning_rate_grid) {
    if (!(lr > 0.0)) throw Error("evaluate: learning rates must be positive");
  }
  for (int e : evaluate.epoch_grid) {
    if (e < 1) throw Error("evaluate: epoch_grid entries must be positive");
  }
  synth.Validate();
}

std::string PipelineConfig::Canonical() const {
  std::string out;
  std::string section;
  for (const auto& binding : Bindings()) {
    if (binding.section != section) {
      section = binding.section;
      out += fmt::format("[{}]\n", section);
    }
    out += fmt::format("{} = {}\n", binding.key, binding.get(*this));
  }
  return out;
}

PipelineConfig ParseConfig(const std::string& text,
                           const std::filesystem::path& base_dir) {
  boost::property_tree::ptree tree;
  std::istringstream in(text);
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw Error(fmt::format("config: {}", e.what()));
  }
  PipelineConfig config;
  const auto bindings = Bindings();
  for (const auto& [section, entries] : tree) {
    if (entries.empty()) {
      throw Error(fmt::format("config: key '{}' outside of a section", section));
    }
    for (const auto& [key, value] : entries) {
      auto it = std::find_if(bindings.begin(), bindings.end(), [&](const Binding& b) {
        return b.section == section && b.key == key;
      });
      if (it == bindings.end()) {
        throw Error(fmt::format("config: unknown key {}.{}", section, key));
      }
      try {
        it->set(config, boost::trim_copy(value.data()));
      } catch (const Error& e) {
        throw Error(fmt::format("config: {}.{}: {}", section, key, e.what()));
      }
    }
  }
  auto resolve = [&](std::filesystem::path& p) {
    if (!p.empty() && p.is_relative()) p = base_dir / p;
  };
  resolve(config.paths.corpus);
  resolve(config.paths.events);
  resolve(config.paths.patterns);
  resolve(config.paths.stopwords);
  resolve(config.paths.output);
  config.synth.seed = config.seed;
  config.Validate();
  return config;
}

PipelineConfig LoadConfig(const std::filesystem::path& path) {
  return ParseConfig(ReadFile(path), path.has_parent_path()
                                         ? path.parent_path()
                                         : std::filesystem::path("."));
}

}  // namespace stressnet
