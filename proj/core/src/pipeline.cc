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

#include "stressnet/pipeline.h"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>
#include <thread>

#include <fmt/format.h>
#include <json.hpp>

#include "stressnet/classifier.h"
#include "stressnet/corpus.h"
#include "stressnet/describe.h"
#include "stressnet/evaluate.h"
#include "stressnet/events.h"
#include "stressnet/pvdm.h"
#include "stressnet/stress_index.h"

namespace stressnet {
namespace {

constexpr Stage kStages[] = {Stage::kIngest, Stage::kLabel,    Stage::kEmbed,
                             Stage::kTrain,  Stage::kScore,    Stage::kIndex,
                             Stage::kDescribe, Stage::kEvaluate};

class Run {
 public:
  explicit Run(const PipelineConfig& config) : config_(config) {}

  void Execute(Stage stage) {
    switch (stage) {
      case Stage::kIngest: return Ingest();
      case Stage::kLabel: return LabelCases();
      case Stage::kEmbed: return Embed();
      case Stage::kTrain: return Train();
      case Stage::kScore: return Score();
      case Stage::kIndex: return Index();
      case Stage::kDescribe: return Describe();
      case Stage::kEvaluate: return Evaluate();
    }
  }

 private:
  std::filesystem::path Out(std::string_view name) const {
    return config_.paths.output / std::string(name);
  }

  // Path of an artifact produced by `producer`, which must already exist.
  std::filesystem::path Need(std::string_view name, Stage producer) const {
    auto path = Out(name);
    if (!std::filesystem::exists(path)) {
      throw Error(fmt::format("missing {}: run `{}` first", name,
                              StageName(producer)));
    }
    return path;
  }

  static std::filesystem::path Input(const std::filesystem::path& path,
                                     std::string_view what) {
    if (path.empty()) throw Error(fmt::format("config: paths.{} is not set", what));
    if (!std::filesystem::exists(path)) {
      throw Error(fmt::format("{} file '{}' does not exist", what, path.string()));
    }
    return path;
  }

  unsigned Threads() const {
    if (config_.deterministic) return 1;
    return std::max(1u, std::thread::hardware_concurrency());
  }

  std::vector<Document> LoadDocuments() const {
    auto docs = ReadCorpusFile(Need(artifacts::kDocuments, Stage::kIngest));
    for (auto& doc : docs) TokenizeDocument(doc);
    return docs;
  }

  static std::map<std::string, const Document*> ById(
      const std::vector<Document>& docs) {
    std::map<std::string, const Document*> out;
    for (const auto& doc : docs) out.emplace(doc.doc_id, &doc);
    return out;
  }

  void Ingest() {
    auto docs = ReadCorpusFile(Input(config_.paths.corpus, "corpus"));
    const auto patterns = CompilePatternsFile(Input(config_.paths.patterns, "patterns"));
    const auto mentions = ScanCorpus(docs, patterns, Threads());
    WriteFileAtomic(Out(artifacts::kDocuments), SerializeCorpus(docs));
    WriteFileAtomic(Out(artifacts::kMentions), SerializeMentions(mentions));
  }

  void LabelCases() {
    const auto docs = LoadDocuments();
    const auto mentions = ReadMentionsFile(Need(artifacts::kMentions, Stage::kIngest));
    const auto registry = ReadEventsFile(Input(config_.paths.events, "events"));
    const auto cases = BuildTrainingSet(mentions, ById(docs), registry, config_.labeling);
    WriteFileAtomic(Out(artifacts::kCases), SerializeCases(cases));
  }

  void Embed() {
    const auto docs = LoadDocuments();
    const auto mentions = ReadMentionsFile(Need(artifacts::kMentions, Stage::kIngest));
    std::set<std::string> mentioned;
    for (const auto& m : mentions) mentioned.insert(m.doc_id);
    std::vector<Document> selected;
    for (const auto& doc : docs) {
      if (mentioned.contains(doc.doc_id)) selected.push_back(doc);
    }
    if (selected.empty()) throw Error("embed: no document mentions any entity");
    const auto result = TrainPvdm(selected, config_.EffectiveSemantics());
    result.model.Save(Out(artifacts::kEmbedding));
    std::string log = "epoch,mean_log_prob\n";
    for (std::size_t e = 0; e < result.report.epoch_mean_log_prob.size(); ++e) {
      log += fmt::format("{},{}\n", e + 1,
                         FormatReal(result.report.epoch_mean_log_prob[e]));
    }
    WriteFileAtomic(Out("embedding_report.csv"), log);
  }

  EmbeddingModel LoadEmbedding() const {
    return EmbeddingModel::Load(Need(artifacts::kEmbedding, Stage::kEmbed));
  }

  Classifier LoadClassifier() const {
    return Classifier::Load(Need(artifacts::kClassifier, Stage::kTrain));
  }

  void Train() {
    const auto cases = ReadCasesFile(Need(artifacts::kCases, Stage::kLabel));
    const auto model = LoadEmbedding();
    TrainingSet data;
    for (const auto& c : cases) {
      if (!model.HasDoc(c.doc_id)) continue;
      const auto v = model.DocVector(c.doc_id);
      data.cases.push_back({Vector(v.begin(), v.end()), c.label});
    }
    TrainClassifier(data, config_.EffectivePredictor()).Save(Out(artifacts::kClassifier));
  }

  void Score() {
    const auto docs = LoadDocuments();
    const auto by_id = ById(docs);
    const auto mentions = ReadMentionsFile(Need(artifacts::kMentions, Stage::kIngest));
    const auto model = LoadEmbedding();
    const auto clf = LoadClassifier();
    std::set<std::pair<std::string, std::string>> pairs;
    for (const auto& m : mentions) pairs.emplace(m.doc_id, m.entity_id);
    std::vector<ScoredArticle> scores;
    std::map<std::string, double> cache;
    for (const auto& [doc_id, entity] : pairs) {
      if (!model.HasDoc(doc_id)) continue;
      auto it = cache.find(doc_id);
      if (it == cache.end()) {
        it = cache.emplace(doc_id, clf.Score(model.DocVector(doc_id))).first;
      }
      scores.push_back(ScoredArticle{doc_id, entity,
                                     Period::Of(by_id.at(doc_id)->published,
                                                config_.period),
                                     it->second});
    }
    WriteFileAtomic(Out(artifacts::kScores), SerializeScores(scores));
  }

  void Index() {
    const auto scores = ReadScoresFile(Need(artifacts::kScores, Stage::kScore));
    const auto series = BuildSeries(scores);
    WriteFileAtomic(Out(artifacts::kIndex), series.Serialize());
    const auto rows = CrossSectionStats(series, config_.percentiles);
    WriteFileAtomic(Out(artifacts::kCrossSection),
                    SerializeCrossSection(rows, config_.percentiles));
  }

  void Describe() {
    const auto docs = LoadDocuments();
    const auto by_id = ById(docs);
    const auto mentions = ReadMentionsFile(Need(artifacts::kMentions, Stage::kIngest));
    const auto model = LoadEmbedding();
    const auto clf = LoadClassifier();
    const auto scores = ReadScoresFile(Need(artifacts::kScores, Stage::kScore));
    const auto series = BuildSeries(scores);
    StopwordList stopwords;
    if (!config_.paths.stopwords.empty()) {
      stopwords = StopwordList::Load(Input(config_.paths.stopwords, "stopwords"));
    }
    const WordScores word_scores = ScoreVocabulary(model, clf);

    struct Group {
      std::string label;
      double index = 0.0;
      std::string entity;  // empty for period groups
      std::set<std::string> doc_ids;
      std::map<std::string, double> doc_score;
    };
    std::map<std::string, Group> groups;
    const bool by_entity = config_.describe.group == GroupMode::kPeriodEntity;
    for (const auto& s : scores) {
      const std::string label = by_entity
                                    ? s.period.ToString() + "/" + s.entity_id
                                    : s.period.ToString();
      auto& g = groups[label];
      g.label = label;
      if (by_entity) g.entity = s.entity_id;
      g.doc_ids.insert(s.doc_id);
      g.doc_score[s.doc_id] = s.score;
    }
    if (by_entity) {
      for (auto& [label, g] : groups) {
        const auto& any = *g.doc_ids.begin();
        const Period p = Period::Of(by_id.at(any)->published, config_.period);
        g.index = series.Find(p, g.entity)->value;
      }
    } else {
      for (const auto& row : CrossSectionStats(series, {})) {
        auto it = groups.find(row.period.ToString());
        if (it != groups.end()) it->second.index = row.mean;
      }
    }
    std::vector<const Group*> ranked;
    for (const auto& [label, g] : groups) ranked.push_back(&g);
    std::stable_sort(ranked.begin(), ranked.end(), [](const Group* a, const Group* b) {
      return a->index > b->index;
    });
    if (config_.describe.top_groups > 0 &&
        static_cast<int>(ranked.size()) > config_.describe.top_groups) {
      ranked.resize(config_.describe.top_groups);
    }

    std::map<std::string, std::vector<const Mention*>> mentions_by_doc;
    for (const auto& m : mentions) mentions_by_doc[m.doc_id].push_back(&m);

    std::string keywords_csv = "group,rank,score,keywords\n";
    std::string excerpts_csv = "group,rank,score,doc_id,start,end,text\n";
    for (const Group* g : ranked) {
      std::vector<KeywordSource> sources;
      std::vector<ExcerptSource> excerpt_sources;
      for (const auto& doc_id : g->doc_ids) {
        const Document& doc = *by_id.at(doc_id);
        const double doc_score = g->doc_score.at(doc_id);
        sources.push_back(KeywordSource{g->label, &doc.tokens, doc_score});
        ExcerptSource es;
        es.doc_id = doc_id;
        es.text = doc.text;
        es.tokens = TokenizeWithOffsets(doc.text);
        es.weights = DocumentWordWeights(doc.tokens, doc_score, word_scores, stopwords);
        std::set<std::pair<std::size_t, std::size_t>> spans;
        for (const Mention* m : mentions_by_doc[doc_id]) {
          if (g->entity.empty() || m->entity_id == g->entity) {
            spans.emplace(m->start, m->end);
          }
        }
        es.mention_spans.assign(spans.begin(), spans.end());
        excerpt_sources.push_back(std::move(es));
      }
      const auto keywords = ExtractKeywords(sources, word_scores, stopwords,
                                            config_.describe.keywords_k);
      int rank = 1;
      for (const auto& kw : keywords.at(g->label)) {
        const std::vector<std::string> row = {g->label, std::to_string(rank++),
                                              FormatReal(kw.score), kw.token};
        keywords_csv += CsvJoin(row) + "\n";
      }
      rank = 1;
      for (const auto& e : ExtractExcerpts(excerpt_sources, config_.describe.excerpts)) {
        const std::vector<std::string> row = {
            g->label, std::to_string(rank++), FormatReal(e.total_score), e.doc_id,
            std::to_string(e.start), std::to_string(e.end), e.text};
        excerpts_csv += CsvJoin(row) + "\n";
      }
    }
    WriteFileAtomic(Out(artifacts::kKeywords), keywords_csv);
    WriteFileAtomic(Out(artifacts::kExcerpts), excerpts_csv);
  }

  void Evaluate() {
    const auto cases = ReadCasesFile(Need(artifacts::kCases, Stage::kLabel));
    const auto model = LoadEmbedding();
    std::vector<CvCase> cv;
    for (const auto& c : cases) {
      if (!model.HasDoc(c.doc_id)) continue;
      const auto v = model.DocVector(c.doc_id);
      cv.push_back(CvCase{c.doc_id, Vector(v.begin(), v.end()), c.label});
    }
    CvOptions options;
    options.folds = config_.evaluate.folds;
    options.mu_grid = config_.evaluate.mu_grid;
    options.seed = config_.EvaluationSeed();
    options.candidates = config_.EvaluationCandidates();
    const auto report = CrossValidate(cv, options);
    WriteFileAtomic(Out(artifacts::kEvaluation), report.SerializeTable());
    WriteFileAtomic(Out(artifacts::kEvaluationMeanCm), report.SerializeMeanCmMetrics());
    WriteFileAtomic(Out(artifacts::kEvaluationAuc), report.SerializeAuc());
  }

  const PipelineConfig& config_;
};

void UpdateManifest(const PipelineConfig& config, Stage stage, double seconds) {
  const auto path = config.paths.output / std::string(artifacts::kManifest);
  nlohmann::ordered_json manifest;
  if (std::filesystem::exists(path)) {
    try {
      manifest = nlohmann::ordered_json::parse(ReadFile(path));
    } catch (const nlohmann::json::exception&) {
      manifest = nlohmann::ordered_json::object();
    }
  }
  const std::string canonical = config.Canonical();
  manifest["config_hash"] = fmt::format("{:016x}", Fnv1a64(canonical));
  manifest["seed"] = config.seed;
  manifest["deterministic"] = config.deterministic;
  manifest["config"] = canonical;
  manifest["stages"][std::string(StageName(stage))] = {{"seconds", seconds}};
  WriteFileAtomic(path, manifest.dump(2) + "\n");
}

}  // namespace

std::string_view StageName(Stage stage) {
  switch (stage) {
    case Stage::kIngest: return "ingest";
    case Stage::kLabel: return "label";
    case Stage::kEmbed: return "embed";
    case Stage::kTrain: return "train";
    case Stage::kScore: return "score";
    case Stage::kIndex: return "index";
    case Stage::kDescribe: return "describe";
    case Stage::kEvaluate: return "evaluate";
  }
  return "unknown";
}

Stage ParseStage(std::string_view name) {
  for (Stage s : kStages) {
    if (StageName(s) == name) return s;
  }
  throw Error(fmt::format("unknown stage '{}'", name));
}

std::vector<Stage> AllStages() { return {std::begin(kStages), std::end(kStages)}; }

std::vector<StageTiming> RunPipeline(const PipelineConfig& config,
                                     const std::vector<Stage>& stages) {
  config.Validate();
  std::vector<Stage> ordered = stages;
  std::sort(ordered.begin(), ordered.end());
  ordered.erase(std::unique(ordered.begin(), ordered.end()), ordered.end());
  std::filesystem::create_directories(config.paths.output);
  Run run(config);
  std::vector<StageTiming> timings;
  for (Stage stage : ordered) {
    const auto begin = std::chrono::steady_clock::now();
    run.Execute(stage);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - begin).count();
    UpdateManifest(config, stage, seconds);
    timings.push_back({stage, seconds});
  }
  return timings;
}

}  // namespace stressnet
