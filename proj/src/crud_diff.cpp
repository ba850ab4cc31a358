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

#include "tempeval/crud_diff.hpp"

#include <algorithm>
#include <iterator>

namespace tempeval {
namespace {

std::string PairKey(const TopicId& topic, const DocId& doc) {
  return topic.str() + " " + doc.str();
}

// Walks two key-sorted maps in lockstep, classifying each key.
template <typename MapA, typename MapB, typename Changed>
ComponentDiff MergeDiff(const MapA& a, const MapB& b, Changed&& changed) {
  std::set<std::string> created, updated, deleted;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      deleted.insert(deleted.end(), ia->first.str());
      ++ia;
    } else if (ia == a.end() || ib->first < ia->first) {
      created.insert(created.end(), ib->first.str());
      ++ib;
    } else {
      if (changed(ia->second, ib->second)) {
        updated.insert(updated.end(), ia->first.str());
      }
      ++ia;
      ++ib;
    }
  }
  return ComponentDiff(std::move(created), std::move(updated), std::move(deleted),
                       a.size(), b.size());
}

}  // namespace

ComponentDiff::ComponentDiff(std::set<std::string> created,
                             std::set<std::string> updated,
                             std::set<std::string> deleted,
                             std::size_t total_from, std::size_t total_to)
    : created_(std::move(created)),
      updated_(std::move(updated)),
      deleted_(std::move(deleted)),
      total_from_(total_from),
      total_to_(total_to) {
  std::vector<std::string> both;
  std::set_intersection(created_.begin(), created_.end(), deleted_.begin(),
                        deleted_.end(), std::back_inserter(both));
  if (!both.empty()) {
    throw Error(ErrorKind::kInvalid,
                "identifier " + both.front() + " is both created and deleted");
  }
  if (deleted_.size() + updated_.size() > total_from_ ||
      total_to_ + deleted_.size() != total_from_ + created_.size()) {
    throw Error(ErrorKind::kInvalid,
                "component totals inconsistent with CRUD sets: total_to must "
                "equal total_from + |created| - |deleted|");
  }
}

std::optional<double> ComponentDiff::relative_delta() const {
  if (total_from_ == 0) return std::nullopt;
  return (static_cast<double>(total_to_) - static_cast<double>(total_from_)) /
         static_cast<double>(total_from_);
}

ComponentDiff DiffDocuments(const CorpusSnapshot& a, const CorpusSnapshot& b) {
  return MergeDiff(a.docs(), b.docs(), [](const DocMeta& x, const DocMeta& y) {
    if (x.content_hash && y.content_hash) return *x.content_hash != *y.content_hash;
    return x.length != y.length;
  });
}

ComponentDiff DiffTopics(const TopicSet& a, const TopicSet& b) {
  return MergeDiff(a, b, [](const TopicDef& x, const TopicDef& y) {
    return x.text && y.text && *x.text != *y.text;
  });
}

ComponentDiff DiffQrels(const Qrels& a, const Qrels& b) {
  std::set<std::string> created, updated, deleted;
  auto add_all = [](std::set<std::string>& into, const TopicId& topic,
                    const Qrels::TopicJudgments& docs) {
    for (const auto& [doc, _] : docs) into.insert(PairKey(topic, doc));
  };
  const auto& ja = a.judgments();
  const auto& jb = b.judgments();
  for (const auto& [topic, docs_a] : ja) {
    auto it = jb.find(topic);
    if (it == jb.end()) {
      add_all(deleted, topic, docs_a);
      continue;
    }
    const auto& docs_b = it->second;
    for (const auto& [doc, grade] : docs_a) {
      auto jt = docs_b.find(doc);
      if (jt == docs_b.end()) {
        deleted.insert(PairKey(topic, doc));
      } else if (jt->second != grade) {
        updated.insert(PairKey(topic, doc));
      }
    }
    for (const auto& [doc, _] : docs_b) {
      if (docs_a.count(doc) == 0) created.insert(PairKey(topic, doc));
    }
  }
  for (const auto& [topic, docs_b] : jb) {
    if (ja.count(topic) == 0) add_all(created, topic, docs_b);
  }
  return ComponentDiff(std::move(created), std::move(updated), std::move(deleted),
                       a.size(), b.size());
}

ChangeSummary Summarize(const EvaluationEnvironment& a,
                        const EvaluationEnvironment& b) {
  return ChangeSummary{a.label, b.label, DiffDocuments(a.corpus, b.corpus),
                       DiffTopics(a.topics, b.topics), DiffQrels(a.qrels, b.qrels)};
}

}  // namespace tempeval
