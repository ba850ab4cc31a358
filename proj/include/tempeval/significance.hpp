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

#ifndef TEMPEVAL_SIGNIFICANCE_HPP_
#define TEMPEVAL_SIGNIFICANCE_HPP_

#include <cstddef>
#include <span>

#include "tempeval/model.hpp"

namespace tempeval {

struct PairedTTest {
  double t_statistic = 0.0;
  double p_value = 1.0;
  std::size_t n = 0;
};

struct TestResult {
  double t_statistic = 0.0;
  double p_value = 1.0;
  double adjusted_alpha = 0.05;
  bool significant = false;
  std::size_t n = 0;
};

// Two-sided paired t-test on a[i] - b[i], df = n - 1. Zero variance of the
// differences gives p = 0 (nonzero mean, t = ±inf) or p = 1 (zero mean,
// t = 0). Throws kInvalid for n < 2 or mismatched lengths.
PairedTTest PairedTTestValues(std::span<const double> a, std::span<const double> b);

// Pairs per-topic scores on their common topics.
PairedTTest PairedTTestScores(const PerTopicScores& scores_a,
                              const PerTopicScores& scores_b);

// alpha / m.
double Bonferroni(double alpha, std::size_t m);

// Runs the paired test and applies the Bonferroni-adjusted threshold:
// significant iff p < alpha / family_size.
TestResult TestSignificance(const PerTopicScores& scores_a,
                            const PerTopicScores& scores_b, double alpha,
                            std::size_t family_size);

}  // namespace tempeval

#endif  // TEMPEVAL_SIGNIFICANCE_HPP_
