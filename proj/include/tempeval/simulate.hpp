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

#ifndef TEMPEVAL_SIMULATE_HPP_
#define TEMPEVAL_SIMULATE_HPP_

// Builds an append-only sequence of evaluation environments from one dated
// corpus, and intersects topic sets across environments.

#include <set>
#include <vector>

#include "tempeval/model.hpp"

namespace tempeval {

class SimulationPlan {
 public:
  // Cumulative slices holding ~n/k more documents each, ordered by
  // (timestamp, doc id).
  static SimulationPlan EqualDocCount(int num_slices);
  // Slice i holds documents with timestamp <= boundaries[i]; the final slice
  // holds the whole corpus, so num_slices = boundaries.size() + 1.
  static SimulationPlan ExplicitBoundaries(std::vector<Timestamp> boundaries);

  int num_slices() const { return num_slices_; }
  const std::vector<Timestamp>& boundaries() const { return boundaries_; }
  bool explicit_boundaries() const { return explicit_; }

 private:
  SimulationPlan(int num_slices, std::vector<Timestamp> boundaries, bool is_explicit);

  int num_slices_;
  std::vector<Timestamp> boundaries_;
  bool explicit_;
};

// Environments labelled t0..t{n-1}. Topics are copied unchanged and qrels
// are restricted to documents present in each slice. Throws kInvalid for
// undated documents, too few distinct timestamps, or an empty slice.
std::vector<EvaluationEnvironment> SplitAppendOnly(const EvaluationEnvironment& base,
                                                   const SimulationPlan& plan);

// Intersection of topic ids; warns when it is empty. Throws kInvalid on an
// empty list.
std::set<TopicId> CommonTopics(const std::vector<EvaluationEnvironment>& ees,
                               Diagnostics* diagnostics = nullptr);

}  // namespace tempeval

#endif  // TEMPEVAL_SIMULATE_HPP_
