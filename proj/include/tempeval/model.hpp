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

#ifndef TEMPEVAL_MODEL_HPP_
#define TEMPEVAL_MODEL_HPP_

// Domain types shared by every module: identifiers, rankings, runs,
// relevance judgments, corpus snapshots and evaluation environments.
//
// All types validate their invariants on construction and throw
// tempeval::Error(kInvalid) naming the violated invariant. Instances are
// immutable afterwards and may be shared read-only across threads.

#include <chrono>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tempeval/error.hpp"

namespace tempeval {

namespace internal {
void ValidateToken(std::string_view kind, std::string_view value);
}  // namespace internal

// Non-empty whitespace-free token. Tag only distinguishes the id spaces.
template <typename Tag>
class Identifier {
 public:
  explicit Identifier(std::string value) : value_(std::move(value)) {
    internal::ValidateToken(Tag::kName, value_);
  }

  const std::string& str() const { return value_; }

  auto operator<=>(const Identifier&) const = default;
  bool operator==(const Identifier&) const = default;

 private:
  std::string value_;
};

struct DocIdTag {
  static constexpr std::string_view kName = "DocId";
};
struct TopicIdTag {
  static constexpr std::string_view kName = "TopicId";
};

using DocId = Identifier<DocIdTag>;
using TopicId = Identifier<TopicIdTag>;

struct RankedDoc {
  DocId doc;
  int rank;
  double score;

  bool operator==(const RankedDoc&) const = default;
};

// One topic's result list. Ranks are 1..n in list order, doc ids are unique
// and scores never increase down the list.
class Ranking {
 public:
  Ranking(TopicId topic, std::vector<RankedDoc> entries);

  // Sorts by (score desc, doc id asc) and renumbers ranks 1..n. Throws on
  // duplicate doc ids or non-finite scores.
  static Ranking Canonical(TopicId topic,
                           std::vector<std::pair<DocId, double>> scored);

  const TopicId& topic() const { return topic_; }
  std::span<const RankedDoc> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  std::vector<std::string> DocIds() const;

  bool operator==(const Ranking&) const = default;

 private:
  TopicId topic_;
  std::vector<RankedDoc> entries_;
};

class RunFile {
 public:
  RunFile(std::string system_tag, std::string ee_label,
          std::map<TopicId, Ranking> rankings);

  const std::string& system_tag() const { return system_tag_; }
  const std::string& ee_label() const { return ee_label_; }
  const std::map<TopicId, Ranking>& rankings() const { return rankings_; }

  const Ranking* Find(const TopicId& topic) const;
  std::set<TopicId> Topics() const;

  bool operator==(const RunFile&) const = default;

 private:
  std::string system_tag_;
  std::string ee_label_;
  std::map<TopicId, Ranking> rankings_;
};

// Graded relevance judgments. Grades are raw integers >= 0; binarization
// happens inside the metrics.
class Qrels {
 public:
  using TopicJudgments = std::map<DocId, int>;

  Qrels() = default;
  explicit Qrels(std::map<TopicId, TopicJudgments> judgments);

  const std::map<TopicId, TopicJudgments>& judgments() const {
    return judgments_;
  }
  const TopicJudgments* Find(const TopicId& topic) const;
  std::optional<int> Grade(const TopicId& topic, const DocId& doc) const;

  std::set<TopicId> Topics() const;
  // Topics with at least one judgment of grade >= 1.
  std::set<TopicId> TopicsWithRelevant() const;
  std::size_t size() const { return pair_count_; }
  bool empty() const { return pair_count_ == 0; }

  bool operator==(const Qrels& o) const { return judgments_ == o.judgments_; }

 private:
  std::map<TopicId, TopicJudgments> judgments_;
  std::size_t pair_count_ = 0;
};

// Instant parsed from an ISO-8601 date or date-time. The source text is
// retained so manifests can be written back unchanged.
struct Timestamp {
  std::chrono::sys_seconds instant;
  std::string text;

  auto operator<=>(const Timestamp& o) const { return instant <=> o.instant; }
  bool operator==(const Timestamp& o) const {
    return instant == o.instant && text == o.text;
  }
};

struct DocMeta {
  DocMeta(DocId doc_id, std::int64_t length,
          std::optional<Timestamp> timestamp = std::nullopt,
          std::optional<std::string> content_hash = std::nullopt);

  DocId doc_id;
  std::int64_t length;
  std::optional<Timestamp> timestamp;
  std::optional<std::string> content_hash;

  bool operator==(const DocMeta&) const = default;
};

class CorpusSnapshot {
 public:
  CorpusSnapshot() = default;
  explicit CorpusSnapshot(std::map<DocId, DocMeta> docs);

  const std::map<DocId, DocMeta>& docs() const { return docs_; }
  bool Contains(const DocId& id) const { return docs_.count(id) != 0; }
  std::size_t size() const { return docs_.size(); }

  bool operator==(const CorpusSnapshot&) const = default;

 private:
  std::map<DocId, DocMeta> docs_;
};

struct TopicDef {
  TopicId topic_id;
  std::optional<std::string> text;

  bool operator==(const TopicDef&) const = default;
};

using TopicSet = std::map<TopicId, TopicDef>;

struct EvaluationEnvironment {
  std::string label;
  CorpusSnapshot corpus;
  TopicSet topics;
  Qrels qrels;

  bool operator==(const EvaluationEnvironment&) const = default;
};

enum class MeasureKind { kPrecisionAtK, kNdcg, kBpref };

class MeasureSpec {
 public:
  MeasureSpec(MeasureKind kind, std::optional<int> cutoff);

  static MeasureSpec PrecisionAt(int k) {
    return MeasureSpec(MeasureKind::kPrecisionAtK, k);
  }
  static MeasureSpec Ndcg(std::optional<int> k = std::nullopt) {
    return MeasureSpec(MeasureKind::kNdcg, k);
  }
  static MeasureSpec Bpref() { return MeasureSpec(MeasureKind::kBpref, {}); }

  // Accepts "P@10", "nDCG", "nDCG@20", "bpref" (case-insensitive).
  static MeasureSpec Parse(std::string_view text);
  // Comma-separated list of Parse() inputs.
  static std::vector<MeasureSpec> ParseList(std::string_view text);

  MeasureKind kind() const { return kind_; }
  std::optional<int> cutoff() const { return cutoff_; }
  std::string ToString() const;

  auto operator<=>(const MeasureSpec&) const = default;
  bool operator==(const MeasureSpec&) const = default;

 private:
  MeasureKind kind_;
  std::optional<int> cutoff_;
};

class PerTopicScores {
 public:
  PerTopicScores(MeasureSpec measure, std::string system_tag,
                 std::string ee_label, std::map<TopicId, double> scores);

  const MeasureSpec& measure() const { return measure_; }
  const std::string& system_tag() const { return system_tag_; }
  const std::string& ee_label() const { return ee_label_; }
  const std::map<TopicId, double>& scores() const { return scores_; }
  std::size_t size() const { return scores_.size(); }

  bool operator==(const PerTopicScores&) const = default;

 private:
  MeasureSpec measure_;
  std::string system_tag_;
  std::string ee_label_;
  std::map<TopicId, double> scores_;
};

// Returns an empty list iff the environment is consistent. Qrels topics
// missing from the topic set and judged documents missing from the corpus
// are reported as warnings.
Diagnostics ValidateEnvironment(const EvaluationEnvironment& ee);

}  // namespace tempeval

#endif  // TEMPEVAL_MODEL_HPP_
