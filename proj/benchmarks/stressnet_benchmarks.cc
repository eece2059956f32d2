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
#include <sstream>

#include <benchmark/benchmark.h>

#include "stressnet/classifier.h"
#include "stressnet/corpus.h"
#include "stressnet/describe.h"
#include "stressnet/evaluate.h"
#include "stressnet/huffman.h"
#include "stressnet/pvdm.h"
#include "stressnet/synthetic.h"

namespace stressnet {
namespace {

const SyntheticCorpus& Corpus() {
  static const SyntheticCorpus corpus = [] {
    auto spec = SyntheticSpec::Default();
    spec.n_docs = 500;
    return GenerateSynthetic(spec);
  }();
  return corpus;
}

void BM_Tokenize(benchmark::State& state) {
  const auto& docs = Corpus().docs;
  std::size_t bytes = 0;
  for (auto _ : state) {
    for (const auto& d : docs) {
      benchmark::DoNotOptimize(Tokenize(d.text));
      bytes += d.text.size();
    }
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(bytes));
}
BENCHMARK(BM_Tokenize);

void BM_ScanCorpus(benchmark::State& state) {
  std::istringstream in(Corpus().patterns);
  const auto patterns = CompilePatterns(in);
  for (auto _ : state) benchmark::DoNotOptimize(ScanCorpus(Corpus().docs, patterns));
}
BENCHMARK(BM_ScanCorpus)->Unit(benchmark::kMillisecond);

void BM_HuffmanBuild(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::vector<std::int64_t> counts(static_cast<std::size_t>(state.range(0)));
  for (auto& c : counts) c = 1 + static_cast<std::int64_t>(rng() % 100000);
  for (auto _ : state) benchmark::DoNotOptimize(HuffmanTree::Build(counts));
}
BENCHMARK(BM_HuffmanBuild)->Range(64, 1 << 16);

void BM_PvdmEpoch(benchmark::State& state) {
  TrainParams p;
  p.dim = static_cast<int>(state.range(0));
  p.epochs = 1;
  std::int64_t positions = 0;
  for (auto _ : state) {
    auto r = TrainPvdm(Corpus().docs, p);
    positions += r.report.positions_per_epoch;
  }
  state.counters["positions/s"] =
      benchmark::Counter(static_cast<double>(positions), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_PvdmEpoch)->Arg(50)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_ClassifierEpoch(benchmark::State& state) {
  std::mt19937_64 rng(2);
  TrainingSet data;
  for (int i = 0; i < 2000; ++i) {
    Vector x(400);
    for (double& v : x) v = UnitInterval(rng()) - 0.5;
    data.cases.push_back({std::move(x), i % 10 == 0 ? 1 : 0});
  }
  ClassifierParams p;
  p.epochs = 1;
  for (auto _ : state) benchmark::DoNotOptimize(TrainClassifier(data, p));
}
BENCHMARK(BM_ClassifierEpoch)->Unit(benchmark::kMillisecond);

void BM_ExtractExcerpts(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::vector<ExcerptSource> sources;
  for (const auto& d : Corpus().docs) {
    if (sources.size() == 50) break;
    ExcerptSource s;
    s.doc_id = d.doc_id;
    s.text = d.text;
    s.tokens = TokenizeWithOffsets(d.text);
    for (const auto& t : d.tokens) s.weights[t] = UnitInterval(rng());
    sources.push_back(std::move(s));
  }
  ExcerptOptions opt;
  for (auto _ : state) benchmark::DoNotOptimize(ExtractExcerpts(sources, opt));
}
BENCHMARK(BM_ExtractExcerpts)->Unit(benchmark::kMillisecond);

void BM_RocAuc(benchmark::State& state) {
  std::mt19937_64 rng(4);
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<int> labels(n);
  std::vector<double> scores(n);
  for (std::size_t i = 0; i < n; ++i) {
    labels[i] = static_cast<int>(rng() % 2);
    scores[i] = UnitInterval(rng());
  }
  for (auto _ : state) benchmark::DoNotOptimize(RocAuc(labels, scores));
}
BENCHMARK(BM_RocAuc)->Range(1 << 8, 1 << 16);

}  // namespace
}  // namespace stressnet

BENCHMARK_MAIN();
