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

#ifndef TEMPEVAL_CHANGE_MEASURES_HPP_
#define TEMPEVAL_CHANGE_MEASURES_HPP_

// Measures of how a system's results change between an initial evaluation
// environment and an evolved one:
//
//   rank-biased overlap   compares the two rankings directly, per topic
//   RMSE                  compares per-topic effectiveness under one qrels
//   result delta (ReΔ)    relative change of the ARP, (M - M') / M
//   delta RI              change of the relative improvement over a pivot

#include <map>
#include <set>
#include <span>
#include <string>

#include "tempeval/effectiveness.hpp"
#include "tempeval/model.hpp"

namespace tempeval {

class RboConfig {
 public:
  static constexpr double kDefaultPhi = 0.9;
  static constexpr int kDefaultDepth = 100;

  RboConfig(double phi = kDefaultPhi, int depth = kDefaultDepth,
            bool normalize = true);

  double phi() const { return phi_; }
  int depth() const { return depth_; }
  bool normalize() const { return normalize_; }

 private:
  double phi_;
  int depth_;
  bool normalize_;
};

struct ChangeScores {
  std::map<TopicId, double> per_topic;
  double mean = 0.0;
};

// Truncated RBO with agreement |prefix_i(a) ∩ prefix_i(b)| / i, evaluated to
// depth d = min(depth, max(|a|, |b|)):
//
//   (1 - phi) * sum_{i=1..d} phi^(i-1) * A_i
//
// With normalize the sum is divided by 1 - phi^d, so identical rankings
// score exactly 1. Two empty rankings score 1. Doc ids must be unique within
// each list; a repeat inside the evaluated depth throws kInvalid.
double Rbo(std::span<const std::string> a, std::span<const std::string> b,
           const RboConfig& cfg);

// Same as Rbo() on the rankings' doc sequences. Throws kInvalid if the
// rankings belong to different topics.
double RboTopic(const Ranking& r, const Ranking& r_prime, const RboConfig& cfg);

// Per-topic RBO over topic_filter and its mean. Topics missing from either
// run contribute 0 and produce a warning. Throws kInvalid on an empty filter.
ChangeScores MeanRbo(const RunFile& run, const RunFile& run_prime,
                     const RboConfig& cfg, const std::set<TopicId>& topic_filter,
                     Diagnostics* diagnostics = nullptr);

// Root mean square difference over the topics common to both score sets.
// Both must come from the same measure (and the same qrels, which the caller
// guarantees).
double Rmse(const PerTopicScores& scores, const PerTopicScores& scores_prime);

// (initial - evolved) / initial. Negative means the evolved EE scores higher.
double ResultDelta(const ArpResult& arp_initial, const ArpResult& arp_evolved);

// (system - pivot) / pivot within one environment.
double RelativeImprovement(const ArpResult& arp_system,
                           const ArpResult& arp_pivot);

// RI - RI'. Zero means the relative standing against the pivot is unchanged;
// positive means the improvement over the pivot shrank.
double DeltaRi(double ri_initial, double ri_evolved);

}  // namespace tempeval

#endif  // TEMPEVAL_CHANGE_MEASURES_HPP_
