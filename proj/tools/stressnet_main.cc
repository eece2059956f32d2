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

// Command-line driver: runs pipeline stages from a config file and
// generates synthetic corpora.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "stressnet/config.h"
#include "stressnet/pipeline.h"
#include "stressnet/synthetic.h"

namespace {

std::string SyntheticConfig(const stressnet::SyntheticPaths& paths,
                            std::uint64_t seed) {
  return fmt::format(
      "[general]\nseed = {}\ndeterministic = true\n\n"
      "[paths]\ncorpus = {}\nevents = {}\npatterns = {}\nstopwords = {}\n"
      "output = out\n",
      seed, paths.corpus.filename().string(), paths.events.filename().string(),
      paths.patterns.filename().string(), paths.stopwords.filename().string());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stressnet: news-based bank distress index with descriptions"};
  app.require_subcommand(1, 0);
  app.fallthrough();

  std::string config_path;
  std::optional<std::uint64_t> seed;
  bool deterministic = false;
  app.add_option("--config", config_path, "Pipeline config file (INI)");
  app.add_option("--seed", seed, "Override general.seed");
  app.add_flag("--deterministic", deterministic,
               "Force sequential, reproducible numerics");

  std::vector<std::pair<CLI::App*, stressnet::Stage>> stage_commands;
  for (auto stage : stressnet::AllStages()) {
    auto* cmd = app.add_subcommand(std::string(stressnet::StageName(stage)),
                                   fmt::format("Run the {} stage",
                                               stressnet::StageName(stage)));
    stage_commands.emplace_back(cmd, stage);
  }
  auto* run_all = app.add_subcommand("run-all", "Run every stage in order");
  auto* synth = app.add_subcommand("synth", "Write a synthetic corpus");
  std::string synth_dir = "synthetic";
  synth->add_option("--out", synth_dir, "Output directory")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    stressnet::PipelineConfig config;
    if (!config_path.empty()) {
      config = stressnet::LoadConfig(config_path);
    }
    if (seed) {
      config.seed = *seed;
      config.synth.seed = *seed;
    }
    if (deterministic) config.deterministic = true;

    if (synth->parsed()) {
      const auto corpus = stressnet::GenerateSynthetic(config.synth);
      const auto paths = stressnet::WriteSynthetic(corpus, synth_dir);
      stressnet::WriteFileAtomic(std::filesystem::path(synth_dir) / "pipeline.ini",
                                 SyntheticConfig(paths, config.seed));
      std::cout << fmt::format("wrote {} documents, {} events to {}\n",
                               corpus.docs.size(), corpus.events.size(), synth_dir);
      return 0;
    }

    if (config_path.empty()) {
      std::cerr << "error: --config is required for pipeline stages\n";
      return 2;
    }
    std::vector<stressnet::Stage> stages;
    if (run_all->parsed()) {
      stages = stressnet::AllStages();
    } else {
      for (const auto& [cmd, stage] : stage_commands) {
        if (cmd->parsed()) stages.push_back(stage);
      }
    }
    for (const auto& t : stressnet::RunPipeline(config, stages)) {
      std::cout << fmt::format("{:<9} {:8.2f}s\n", stressnet::StageName(t.stage),
                               t.seconds);
    }
  } catch (const stressnet::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
