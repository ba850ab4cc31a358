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

#include "tempeval/simulate.hpp"

#include <algorithm>

namespace tempeval {

SimulationPlan::SimulationPlan(int num_slices, std::vector<Timestamp> boundaries,
                               bool is_explicit)
    : num_slices_(num_slices), boundaries_(std::move(boundaries)), explicit_(is_explicit) {
  if (num_slices_ < 2) {
    throw Error(ErrorKind::kInvalid, "a simulation needs at least 2 slices");
  }
  for (std::size_t i = 1; i < boundaries_.size(); ++i) {
    if (!(boundaries_[i - 1].instant < boundaries_[i].instant)) {
      throw Error(ErrorKind::kInvalid, "slice boundaries must be strictly increasing");
    }
  }
}

SimulationPlan SimulationPlan::EqualDocCount(int num_slices) {
  return SimulationPlan(num_slices, {}, false);
}

SimulationPlan SimulationPlan::ExplicitBoundaries(std::vector<Timestamp> boundaries) {
  const int n = static_cast<int>(boundaries.size()) + 1;
  return SimulationPlan(n, std::move(boundaries), true);
}

std::vector<EvaluationEnvironment> SplitAppendOnly(const EvaluationEnvironment& base,
                                                   const SimulationPlan& plan) {
  std::vector<const DocMeta*> order;
  order.reserve(base.corpus.size());
  for (const auto& [id, meta] : base.corpus.docs()) {
    if (!meta.timestamp) {
      throw Error(ErrorKind::kInvalid,
                  "document " + id.str() + " has no timestamp; cannot slice by date");
    }
    order.push_back(&meta);
  }
  // Map iteration is by doc id, so a stable sort by instant keeps id order
  // among equal timestamps.
  std::stable_sort(order.begin(), order.end(), [](const DocMeta* a, const DocMeta* b) {
    return a->timestamp->instant < b->timestamp->instant;
  });

  const std::size_t k = static_cast<std::size_t>(plan.num_slices());
  std::vector<std::size_t> cumulative(k);
  if (!plan.explicit_boundaries()) {
    std::size_t distinct = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (i == 0 || order[i]->timestamp->instant != order[i - 1]->timestamp->instant) {
        ++distinct;
      }
    }
    if (distinct < k) {
      throw Error(ErrorKind::kInvalid,
                  "cannot split into " + std::to_string(k) + " slices: only " +
                      std::to_string(distinct) + " distinct timestamps");
    }
    const std::size_t n = order.size();
    std::size_t total = 0;
    for (std::size_t i = 0; i < k; ++i) {
      total += n / k + (i < n % k ? 1 : 0);
      cumulative[i] = total;
    }
  } else {
    for (std::size_t i = 0; i + 1 < k; ++i) {
      const auto bound = plan.boundaries()[i].instant;
      cumulative[i] = static_cast<std::size_t>(
          std::upper_bound(order.begin(), order.end(), bound,
                           [](const auto& t, const DocMeta* d) {
                             return t < d->timestamp->instant;
                           }) -
          order.begin());
    }
    cumulative[k - 1] = order.size();
  }
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t prev = i == 0 ? 0 : cumulative[i - 1];
    if (cumulative[i] <= prev) {
      throw Error(ErrorKind::kInvalid,
                  "slice t" + std::to_string(i) + " would add no documents");
    }
  }

  std::vector<EvaluationEnvironment> out;
  out.reserve(k);
  std::map<DocId, DocMeta> docs;
  std::size_t next = 0;
  for (std::size_t i = 0; i < k; ++i) {
    for (; next < cumulative[i]; ++next) docs.emplace(order[next]->doc_id, *order[next]);
    EvaluationEnvironment ee;
    ee.label = "t" + std::to_string(i);
    ee.corpus = CorpusSnapshot(docs);
    ee.topics = base.topics;
    std::map<TopicId, Qrels::TopicJudgments> judgments;
    for (const auto& [topic, judged] : base.qrels.judgments()) {
      Qrels::TopicJudgments kept;
      for (const auto& [doc, grade] : judged) {
        if (docs.count(doc) != 0) kept.emplace(doc, grade);
      }
      if (!kept.empty()) judgments.emplace(topic, std::move(kept));
    }
    ee.qrels = Qrels(std::move(judgments));
    out.push_back(std::move(ee));
  }
  return out;
}

std::set<TopicId> CommonTopics(const std::vector<EvaluationEnvironment>& ees,
                               Diagnostics* diagnostics) {
  if (ees.empty()) {
    throw Error(ErrorKind::kInvalid, "common topics of an empty environment list");
  }
  std::set<TopicId> common;
  for (const auto& [id, _] : ees.front().topics) common.insert(id);
  for (std::size_t i = 1; i < ees.size(); ++i) {
    std::erase_if(common, [&](const TopicId& t) { return ees[i].topics.count(t) == 0; });
  }
  if (common.empty()) {
    Warn(diagnostics, "topics", "environments share no common topics");
  }
  return common;
}

}  // namespace tempeval
