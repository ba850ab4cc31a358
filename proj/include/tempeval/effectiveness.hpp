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

#ifndef TEMPEVAL_EFFECTIVENESS_HPP_
#define TEMPEVAL_EFFECTIVENESS_HPP_

#include <optional>
#include <set>
#include <string>

#include "tempeval/model.hpp"

namespace tempeval {

// Average retrieval performance of one run under one measure.
struct ArpResult {
  MeasureSpec measure;
  std::string system_tag;
  std::string ee_label;
  double mean = 0.0;
  std::size_t evaluated_topic_count = 0;
};

// Fraction of the top k documents judged relevant (grade >= 1). The
// denominator stays k when fewer than k documents were retrieved.
double PrecisionAtK(const Ranking& ranking, const Qrels& qrels, int k);

// Linear-gain nDCG. DCG sums grade / log2(i + 1) over the first k retrieved
// documents (all of them without a cutoff); the ideal DCG uses the topic's
// judged grades sorted descending, truncated at k when a cutoff is given.
// Returns 0 when the ideal DCG is 0.
double Ndcg(const Ranking& ranking, const Qrels& qrels,
            std::optional<int> k = std::nullopt);

// bpref: (1/R) * sum over retrieved relevant r of
//   1 - min(#judged non-relevant above r, R) / min(R, N).
// Unjudged documents are ignored. Returns 0 when R == 0.
double Bpref(const Ranking& ranking, const Qrels& qrels);

double EvaluateTopic(const Ranking& ranking, const Qrels& qrels,
                     const MeasureSpec& measure);

// Scores topics in (run topics ∩ qrels topics with a relevant document),
// further restricted to topic_filter when given. Filter topics that have
// relevant judgments but no ranking in the run score 0.
PerTopicScores EvaluateRun(const RunFile& run, const Qrels& qrels,
                           const MeasureSpec& measure,
                           const std::optional<std::set<TopicId>>& topic_filter =
                               std::nullopt);

// Mean over topics, summed in topic-id order. Throws kUndefined on empty
// input.
ArpResult Arp(const PerTopicScores& scores);

}  // namespace tempeval

#endif  // TEMPEVAL_EFFECTIVENESS_HPP_
