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

#include "tempeval/significance.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

namespace tempeval {

PairedTTest PairedTTestValues(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::kInvalid, "paired t-test needs samples of equal length");
  }
  const std::size_t n = a.size();
  if (n < 2) {
    throw Error(ErrorKind::kInvalid, "paired t-test needs at least 2 pairs, got " +
                                         std::to_string(n));
  }
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) mean += a[i] - b[i];
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dev = (a[i] - b[i]) - mean;
    ss += dev * dev;
  }
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));

  PairedTTest out;
  out.n = n;
  // Differences that are identical up to rounding have no spread to test.
  const double scale = std::max(1.0, std::abs(mean));
  if (sd <= 64 * std::numeric_limits<double>::epsilon() * scale) {
    if (std::abs(mean) <= 64 * std::numeric_limits<double>::epsilon()) {
      out.t_statistic = 0.0;
      out.p_value = 1.0;
    } else {
      out.t_statistic = mean > 0 ? std::numeric_limits<double>::infinity()
                                 : -std::numeric_limits<double>::infinity();
      out.p_value = 0.0;
    }
    return out;
  }
  out.t_statistic = mean / (sd / std::sqrt(static_cast<double>(n)));
  boost::math::students_t_distribution<double> dist(static_cast<double>(n - 1));
  out.p_value = 2.0 * boost::math::cdf(boost::math::complement(
                          dist, std::abs(out.t_statistic)));
  if (out.p_value > 1.0) out.p_value = 1.0;
  return out;
}

PairedTTest PairedTTestScores(const PerTopicScores& scores_a,
                              const PerTopicScores& scores_b) {
  if (!(scores_a.measure() == scores_b.measure())) {
    throw Error(ErrorKind::kInvalid, "paired t-test compares one measure, got " +
                                         scores_a.measure().ToString() + " and " +
                                         scores_b.measure().ToString());
  }
  std::vector<double> a, b;
  for (const auto& [topic, value] : scores_a.scores()) {
    auto it = scores_b.scores().find(topic);
    if (it == scores_b.scores().end()) continue;
    a.push_back(value);
    b.push_back(it->second);
  }
  return PairedTTestValues(a, b);
}

double Bonferroni(double alpha, std::size_t m) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw Error(ErrorKind::kInvalid, "alpha must lie in (0,1]");
  }
  if (m < 1) throw Error(ErrorKind::kInvalid, "Bonferroni family size must be >= 1");
  return alpha / static_cast<double>(m);
}

TestResult TestSignificance(const PerTopicScores& scores_a,
                            const PerTopicScores& scores_b, double alpha,
                            std::size_t family_size) {
  const double adjusted = Bonferroni(alpha, family_size);
  const PairedTTest t = PairedTTestScores(scores_a, scores_b);
  return TestResult{t.t_statistic, t.p_value, adjusted, t.p_value < adjusted, t.n};
}

}  // namespace tempeval
