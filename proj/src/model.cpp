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

#include "tempeval/model.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

namespace tempeval {

const char* ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalid:
      return "invalid";
    case ErrorKind::kParse:
      return "parse error";
    case ErrorKind::kIo:
      return "i/o error";
    case ErrorKind::kUsage:
      return "usage error";
    case ErrorKind::kUndefined:
      return "undefined";
  }
  return "error";
}

std::string FormatDiagnostic(const Diagnostic& d) {
  std::string out = d.severity == Severity::kWarning ? "warning" : "error";
  if (!d.location.empty()) out += " [" + d.location + "]";
  out += ": " + d.message;
  return out;
}

namespace internal {

void ValidateToken(std::string_view kind, std::string_view value) {
  if (value.empty()) {
    throw Error(ErrorKind::kInvalid, std::string(kind) + " must be non-empty");
  }
  for (char c : value) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      throw Error(ErrorKind::kInvalid, std::string(kind) + " '" +
                                           std::string(value) +
                                           "' must not contain whitespace");
    }
  }
}

}  // namespace internal

Ranking::Ranking(TopicId topic, std::vector<RankedDoc> entries)
    : topic_(std::move(topic)), entries_(std::move(entries)) {
  std::set<std::string_view> seen;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const RankedDoc& e = entries_[i];
    if (!seen.insert(e.doc.str()).second) {
      throw Error(ErrorKind::kInvalid, "ranking for topic " + topic_.str() +
                                           ": duplicate doc id " + e.doc.str());
    }
    if (e.rank != static_cast<int>(i) + 1) {
      throw Error(ErrorKind::kInvalid,
                  "ranking for topic " + topic_.str() +
                      ": ranks must be 1..n in list order (doc " +
                      e.doc.str() + " has rank " + std::to_string(e.rank) +
                      ")");
    }
    if (!std::isfinite(e.score)) {
      throw Error(ErrorKind::kInvalid, "ranking for topic " + topic_.str() +
                                           ": non-finite score for doc " +
                                           e.doc.str());
    }
    if (i > 0 && e.score > entries_[i - 1].score) {
      throw Error(ErrorKind::kInvalid,
                  "ranking for topic " + topic_.str() +
                      ": scores must be non-increasing (doc " + e.doc.str() +
                      ")");
    }
  }
}

Ranking Ranking::Canonical(TopicId topic,
                           std::vector<std::pair<DocId, double>> scored) {
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  std::vector<RankedDoc> entries;
  entries.reserve(scored.size());
  int rank = 1;
  for (auto& [doc, score] : scored) {
    entries.push_back({std::move(doc), rank++, score});
  }
  return Ranking(std::move(topic), std::move(entries));
}

std::vector<std::string> Ranking::DocIds() const {
  std::vector<std::string> ids;
  ids.reserve(entries_.size());
  for (const RankedDoc& e : entries_) ids.push_back(e.doc.str());
  return ids;
}

RunFile::RunFile(std::string system_tag, std::string ee_label,
                 std::map<TopicId, Ranking> rankings)
    : system_tag_(std::move(system_tag)),
      ee_label_(std::move(ee_label)),
      rankings_(std::move(rankings)) {
  if (system_tag_.empty()) {
    throw Error(ErrorKind::kInvalid, "run system tag must be non-empty");
  }
  for (const auto& [topic, ranking] : rankings_) {
    if (!(ranking.topic() == topic)) {
      throw Error(ErrorKind::kInvalid, "run ranking keyed by topic " +
                                           topic.str() + " belongs to topic " +
                                           ranking.topic().str());
    }
  }
}

const Ranking* RunFile::Find(const TopicId& topic) const {
  auto it = rankings_.find(topic);
  return it == rankings_.end() ? nullptr : &it->second;
}

std::set<TopicId> RunFile::Topics() const {
  std::set<TopicId> out;
  for (const auto& [topic, _] : rankings_) out.insert(topic);
  return out;
}

Qrels::Qrels(std::map<TopicId, TopicJudgments> judgments)
    : judgments_(std::move(judgments)) {
  for (const auto& [topic, docs] : judgments_) {
    for (const auto& [doc, grade] : docs) {
      if (grade < 0) {
        throw Error(ErrorKind::kInvalid, "qrels grade for (" + topic.str() +
                                             ", " + doc.str() +
                                             ") must be >= 0");
      }
    }
    pair_count_ += docs.size();
  }
}

const Qrels::TopicJudgments* Qrels::Find(const TopicId& topic) const {
  auto it = judgments_.find(topic);
  return it == judgments_.end() ? nullptr : &it->second;
}

std::optional<int> Qrels::Grade(const TopicId& topic, const DocId& doc) const {
  const TopicJudgments* docs = Find(topic);
  if (docs == nullptr) return std::nullopt;
  auto it = docs->find(doc);
  if (it == docs->end()) return std::nullopt;
  return it->second;
}

std::set<TopicId> Qrels::Topics() const {
  std::set<TopicId> out;
  for (const auto& [topic, _] : judgments_) out.insert(topic);
  return out;
}

std::set<TopicId> Qrels::TopicsWithRelevant() const {
  std::set<TopicId> out;
  for (const auto& [topic, docs] : judgments_) {
    if (std::any_of(docs.begin(), docs.end(),
                    [](const auto& p) { return p.second >= 1; })) {
      out.insert(topic);
    }
  }
  return out;
}

DocMeta::DocMeta(DocId id, std::int64_t len, std::optional<Timestamp> ts,
                 std::optional<std::string> hash)
    : doc_id(std::move(id)),
      length(len),
      timestamp(std::move(ts)),
      content_hash(std::move(hash)) {
  if (length < 0) {
    throw Error(ErrorKind::kInvalid,
                "document " + doc_id.str() + ": length must be >= 0");
  }
}

CorpusSnapshot::CorpusSnapshot(std::map<DocId, DocMeta> docs)
    : docs_(std::move(docs)) {
  for (const auto& [id, meta] : docs_) {
    if (!(meta.doc_id == id)) {
      throw Error(ErrorKind::kInvalid, "corpus entry keyed by " + id.str() +
                                           " describes document " +
                                           meta.doc_id.str());
    }
  }
}

MeasureSpec::MeasureSpec(MeasureKind kind, std::optional<int> cutoff)
    : kind_(kind), cutoff_(cutoff) {
  switch (kind_) {
    case MeasureKind::kPrecisionAtK:
      if (!cutoff_ || *cutoff_ < 1) {
        throw Error(ErrorKind::kInvalid, "P@k requires a cutoff k >= 1");
      }
      break;
    case MeasureKind::kNdcg:
      if (cutoff_ && *cutoff_ < 1) {
        throw Error(ErrorKind::kInvalid, "nDCG cutoff must be >= 1");
      }
      break;
    case MeasureKind::kBpref:
      if (cutoff_) {
        throw Error(ErrorKind::kInvalid, "bpref takes no cutoff");
      }
      break;
  }
}

MeasureSpec MeasureSpec::Parse(std::string_view text) {
  std::string lower;
  for (char c : text) {
    lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  std::string_view name = lower;
  std::optional<int> cutoff;
  if (auto at = name.find('@'); at != std::string_view::npos) {
    std::string_view digits = name.substr(at + 1);
    int k = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size()) {
      throw Error(ErrorKind::kUsage, "bad measure cutoff in '" + std::string(text) + "'");
    }
    cutoff = k;
    name = name.substr(0, at);
  }
  std::optional<MeasureKind> kind;
  if (name == "p") kind = MeasureKind::kPrecisionAtK;
  if (name == "ndcg") kind = MeasureKind::kNdcg;
  if (name == "bpref") kind = MeasureKind::kBpref;
  if (kind) {
    try {
      return MeasureSpec(*kind, cutoff);
    } catch (const Error& e) {
      throw Error(ErrorKind::kUsage, "bad measure '" + std::string(text) + "': " + e.what());
    }
  }
  throw Error(ErrorKind::kUsage, "unknown measure '" + std::string(text) +
                                     "' (expected P@k, nDCG[@k] or bpref)");
}

std::vector<MeasureSpec> MeasureSpec::ParseList(std::string_view text) {
  std::vector<MeasureSpec> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view item = text.substr(start, comma - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) {
      MeasureSpec m = Parse(item);
      if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
    }
    start = comma + 1;
  }
  if (out.empty()) throw Error(ErrorKind::kUsage, "no measures given");
  return out;
}

std::string MeasureSpec::ToString() const {
  std::string out;
  switch (kind_) {
    case MeasureKind::kPrecisionAtK:
      out = "P";
      break;
    case MeasureKind::kNdcg:
      out = "nDCG";
      break;
    case MeasureKind::kBpref:
      out = "bpref";
      break;
  }
  if (cutoff_) out += "@" + std::to_string(*cutoff_);
  return out;
}

PerTopicScores::PerTopicScores(MeasureSpec measure, std::string system_tag,
                               std::string ee_label,
                               std::map<TopicId, double> scores)
    : measure_(measure),
      system_tag_(std::move(system_tag)),
      ee_label_(std::move(ee_label)),
      scores_(std::move(scores)) {
  for (const auto& [topic, score] : scores_) {
    if (!(score >= 0.0 && score <= 1.0)) {
      throw Error(ErrorKind::kInvalid, measure_.ToString() + " score for topic " +
                                           topic.str() + " must lie in [0,1]");
    }
  }
}

Diagnostics ValidateEnvironment(const EvaluationEnvironment& ee) {
  Diagnostics out;
  const std::string where = ee.label.empty() ? "environment" : ee.label;
  for (const auto& [topic, docs] : ee.qrels.judgments()) {
    if (ee.topics.count(topic) == 0) {
      Warn(&out, where + " qrels",
           "topic " + topic.str() + " is judged but absent from the topic set");
    }
    std::size_t missing = 0;
    const DocId* first_missing = nullptr;
    for (const auto& [doc, _] : docs) {
      if (!ee.corpus.Contains(doc)) {
        if (first_missing == nullptr) first_missing = &doc;
        ++missing;
      }
    }
    if (missing > 0) {
      Warn(&out, where + " qrels",
           "topic " + topic.str() + ": " + std::to_string(missing) +
               " judged document(s) absent from the corpus (first: " +
               first_missing->str() + ")");
    }
  }
  return out;
}

}  // namespace tempeval
