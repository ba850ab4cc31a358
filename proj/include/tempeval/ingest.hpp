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

#ifndef TEMPEVAL_INGEST_HPP_
#define TEMPEVAL_INGEST_HPP_

// Readers and writers for the on-disk formats:
//   run files   `topic Q0 doc rank score tag`  (TREC, 6 columns)
//   qrels       `topic iteration doc grade`    (TREC, 4 columns)
//   manifests   JSON lines {"doc_id", "length", "timestamp"?, "content_hash"?}
//   topics      `topic_id<TAB>text` per line (text optional)
//   EE config   {"environments": [{"label", "manifest_path",
//                                   "topics_path"?, "qrels_path"}, ...]}
//
// Parse errors throw tempeval::Error(kParse) with the 1-based line number in
// the message. Recoverable oddities are appended to the Diagnostics sink.

#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "tempeval/model.hpp"

namespace tempeval {

struct EEConfig {
  std::string label;
  std::filesystem::path manifest_path;
  std::optional<std::filesystem::path> topics_path;
  std::filesystem::path qrels_path;
};

RunFile ParseRun(std::istream& in, const std::string& ee_label,
                 Diagnostics* diagnostics = nullptr);
Qrels ParseQrels(std::istream& in, Diagnostics* diagnostics = nullptr);
CorpusSnapshot ParseManifest(std::istream& in);
TopicSet ParseTopics(std::istream& in);

// Accepts YYYY-MM-DD, or a date-time YYYY-MM-DDTHH:MM[:SS[.fff]] with an
// optional Z / +HH:MM / -HH:MM suffix.
std::optional<Timestamp> ParseTimestamp(std::string_view text);

// Re-sorts every ranking by (score desc, doc id asc) and renumbers ranks.
RunFile Canonicalize(const RunFile& run);

void WriteRun(const RunFile& run, std::ostream& out);
void WriteQrels(const Qrels& qrels, std::ostream& out);
void WriteManifest(const CorpusSnapshot& corpus, std::ostream& out);
void WriteTopics(const TopicSet& topics, std::ostream& out);

// File-level helpers; errors carry the path as context.
RunFile LoadRun(const std::filesystem::path& path, const std::string& ee_label,
                Diagnostics* diagnostics = nullptr);
Qrels LoadQrels(const std::filesystem::path& path,
                Diagnostics* diagnostics = nullptr);
CorpusSnapshot LoadManifest(const std::filesystem::path& path);
TopicSet LoadTopics(const std::filesystem::path& path);

// Relative paths inside the config resolve against the config's directory.
std::vector<EEConfig> LoadConfig(const std::filesystem::path& path);
std::vector<EEConfig> ParseConfig(std::istream& in,
                                  const std::filesystem::path& base_dir);
void WriteConfig(const std::vector<EEConfig>& configs, std::ostream& out);

// Without a topics file the topic set is the qrels' topic ids (no text).
// Validation findings are appended to diagnostics.
EvaluationEnvironment LoadEnvironment(const EEConfig& config,
                                      Diagnostics* diagnostics = nullptr);

}  // namespace tempeval

#endif  // TEMPEVAL_INGEST_HPP_
