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

#include "tempeval/effectiveness.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace tempeval {
namespace {

const Qrels::TopicJudgments& JudgmentsFor(const Ranking& ranking,
                                          const Qrels& qrels) {
  static const Qrels::TopicJudgments kEmpty;
  const Qrels::TopicJudgments* docs = qrels.Find(ranking.topic());
  return docs == nullptr ? kEmpty : *docs;
}

int GradeOf(const Qrels::TopicJudgments& docs, const DocId& doc) {
  auto it = docs.find(doc);
  return it == docs.end() ? -1 : it->second;
}

}  // namespace

double PrecisionAtK(const Ranking& ranking, const Qrels& qrels, int k) {
  if (k < 1) throw Error(ErrorKind::kInvalid, "P@k requires k >= 1");
  const auto& docs = JudgmentsFor(ranking, qrels);
  const std::size_t depth = std::min<std::size_t>(ranking.size(), k);
  int relevant = 0;
  for (std::size_t i = 0; i < depth; ++i) {
    if (GradeOf(docs, ranking.entries()[i].doc) >= 1) ++relevant;
  }
  return static_cast<double>(relevant) / k;
}

double Ndcg(const Ranking& ranking, const Qrels& qrels, std::optional<int> k) {
  if (k && *k < 1) throw Error(ErrorKind::kInvalid, "nDCG cutoff must be >= 1");
  const auto& docs = JudgmentsFor(ranking, qrels);

  std::vector<int> ideal;
  for (const auto& [_, grade] : docs) {
    if (grade > 0) ideal.push_back(grade);
  }
  std::sort(ideal.begin(), ideal.end(), std::greater<>());
  std::size_t ideal_depth = ideal.size();
  if (k) ideal_depth = std::min<std::size_t>(ideal_depth, *k);
  double idcg = 0.0;
  for (std::size_t i = 0; i < ideal_depth; ++i) {
    idcg += ideal[i] / std::log2(static_cast<double>(i) + 2.0);
  }
  if (idcg == 0.0) return 0.0;

  std::size_t depth = ranking.size();
  if (k) depth = std::min<std::size_t>(depth, *k);
  double dcg = 0.0;
  for (std::size_t i = 0; i < depth; ++i) {
    int grade = GradeOf(docs, ranking.entries()[i].doc);
    if (grade > 0) dcg += grade / std::log2(static_cast<double>(i) + 2.0);
  }
  return std::min(1.0, dcg / idcg);
}

double Bpref(const Ranking& ranking, const Qrels& qrels) {
  const auto& docs = JudgmentsFor(ranking, qrels);
  std::size_t relevant = 0, nonrelevant = 0;
  for (const auto& [_, grade] : docs) {
    (grade >= 1 ? relevant : nonrelevant)++;
  }
  if (relevant == 0) return 0.0;

  const double denom = static_cast<double>(std::min(relevant, nonrelevant));
  std::size_t nonrel_above = 0;
  double sum = 0.0;
  for (const RankedDoc& e : ranking.entries()) {
    int grade = GradeOf(docs, e.doc);
    if (grade < 0) continue;
    if (grade == 0) {
      ++nonrel_above;
    } else if (nonrelevant == 0) {
      sum += 1.0;
    } else {
      sum += 1.0 - static_cast<double>(std::min(nonrel_above, relevant)) / denom;
    }
  }
  return sum / static_cast<double>(relevant);
}

double EvaluateTopic(const Ranking& ranking, const Qrels& qrels,
                     const MeasureSpec& measure) {
  switch (measure.kind()) {
    case MeasureKind::kPrecisionAtK:
      return PrecisionAtK(ranking, qrels, *measure.cutoff());
    case MeasureKind::kNdcg:
      return Ndcg(ranking, qrels, measure.cutoff());
    case MeasureKind::kBpref:
      return Bpref(ranking, qrels);
  }
  return 0.0;
}

PerTopicScores EvaluateRun(const RunFile& run, const Qrels& qrels,
                           const MeasureSpec& measure,
                           const std::optional<std::set<TopicId>>& topic_filter) {
  std::map<TopicId, double> scores;
  for (const TopicId& topic : qrels.TopicsWithRelevant()) {
    if (topic_filter && topic_filter->count(topic) == 0) continue;
    const Ranking* ranking = run.Find(topic);
    if (ranking != nullptr) {
      scores.emplace(topic, EvaluateTopic(*ranking, qrels, measure));
    } else if (topic_filter) {
      scores.emplace(topic, 0.0);
    }
  }
  return PerTopicScores(measure, run.system_tag(), run.ee_label(),
                        std::move(scores));
}

ArpResult Arp(const PerTopicScores& scores) {
  if (scores.size() == 0) {
    throw Error(ErrorKind::kUndefined,
                "no evaluated topics for " + scores.system_tag() + " (" +
                    scores.measure().ToString() + ")");
  }
  double sum = 0.0;
  for (const auto& [_, value] : scores.scores()) sum += value;
  double mean = sum / static_cast<double>(scores.size());
  return ArpResult{scores.measure(), scores.system_tag(), scores.ee_label(),
                   std::clamp(mean, 0.0, 1.0), scores.size()};
}

}  // namespace tempeval
