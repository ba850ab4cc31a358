// Copyright 2026 The tempeval Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TEMPEVAL_PIPELINE_HPP_
#define TEMPEVAL_PIPELINE_HPP_

// Batch commands behind the CLI and the C API: diff, evaluate, change and
// simulate. Each returns its rendered output plus collected warnings and
// throws tempeval::Error on failure.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tempeval/change_measures.hpp"
#include "tempeval/model.hpp"
#include "tempeval/report.hpp"

namespace tempeval {

struct CommandOutput {
  std::string text;
  Diagnostics diagnostics;
};

// A file bound to one evaluation environment label.
struct LabeledPath {
  std::string ee_label;
  std::filesystem::path path;
};

struct DiffRequest {
  std::filesystem::path config;
  std::string from_label;
  std::string to_label;
  Format format = Format::kCsv;
  RenderOptions render;
};

CommandOutput RunDiff(const DiffRequest& request);

enum class TopicFilterMode { kNone, kCommon, kExplicit };

struct EvaluateRequest {
  std::filesystem::path config;
  std::vector<std::filesystem::path> runs;
  std::string ee_label;
  std::vector<MeasureSpec> measures;
  bool per_topic = false;
  TopicFilterMode topic_mode = TopicFilterMode::kNone;
  std::vector<std::string> topics;  // for kExplicit
  Format format = Format::kCsv;
  RenderOptions render;
};

CommandOutput RunEvaluate(const EvaluateRequest& request);

enum class SignificanceMode {
  kPivot,     // system vs pivot within each environment
  kTemporal,  // system at the reference environment vs itself later (dtq only)
};

struct ChangeOptions {
  Scenario scenario = Scenario::kDprimeTQ;
  std::vector<MeasureSpec> measures;
  RboConfig rbo;
  double alpha = 0.05;
  std::size_t family_size = 0;  // 0: derive from systems x environments
  SignificanceMode significance = SignificanceMode::kPivot;
  std::string collection_label;
};

// In-memory core of the change command. The first environment is the
// reference. Every run's ee_label must name one of the environments.
LongitudinalMatrix BuildChangeMatrix(const std::vector<EvaluationEnvironment>& ees,
                                     const std::vector<RunFile>& runs,
                                     const std::vector<RunFile>& pivot_runs,
                                     const ChangeOptions& options,
                                     Diagnostics* diagnostics = nullptr);

struct ChangeRequest {
  std::filesystem::path config;
  std::vector<LabeledPath> runs;
  std::vector<LabeledPath> pivot_runs;
  // Per-EE qrels replacing the config's; only valid in the dtq-prime scenario.
  std::vector<LabeledPath> qrels_overrides;
  // Environments to compare, reference first; empty means config order.
  std::vector<std::string> ee_labels;
  ChangeOptions options;
  Format format = Format::kCsv;
  RenderOptions render;
};

CommandOutput RunChange(const ChangeRequest& request);

struct SimulateRequest {
  std::filesystem::path manifest;
  std::filesystem::path qrels;
  std::optional<std::filesystem::path> topics;
  int slices = 3;
  std::filesystem::path out_dir;
};

// Writes t<i>.manifest.jsonl, t<i>.qrels, topics.tsv and environments.json
// under out_dir; the output text is the written config.
CommandOutput RunSimulate(const SimulateRequest& request);

struct ReportRequest {
  std::filesystem::path input;  // matrix JSON as written by the change command
  Format format = Format::kCsv;
  RenderOptions render;
};

CommandOutput RunReport(const ReportRequest& request);

}  // namespace tempeval

#endif  // TEMPEVAL_PIPELINE_HPP_
