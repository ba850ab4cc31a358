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

#include "tempeval/change_measures.hpp"

#include <algorithm>
#include <cmath>
#include <string_view>
#include <unordered_set>

namespace tempeval {

RboConfig::RboConfig(double phi, int depth, bool normalize)
    : phi_(phi), depth_(depth), normalize_(normalize) {
  if (!(phi_ > 0.0 && phi_ < 1.0)) {
    throw Error(ErrorKind::kInvalid, "RBO persistence phi must lie in (0,1)");
  }
  if (depth_ < 1) {
    throw Error(ErrorKind::kInvalid, "RBO depth must be >= 1");
  }
}

namespace {

[[noreturn]] void DuplicateDoc(std::string_view doc) {
  throw Error(ErrorKind::kInvalid, "duplicate doc id '" + std::string(doc) + "' in ranking");
}

}  // namespace

double Rbo(std::span<const std::string> a, std::span<const std::string> b,
           const RboConfig& cfg) {
  const std::size_t d = std::min<std::size_t>(
      static_cast<std::size_t>(cfg.depth()), std::max(a.size(), b.size()));
  if (d == 0) return 1.0;

  std::unordered_set<std::string_view> seen_a, seen_b;
  seen_a.reserve(d);
  seen_b.reserve(d);
  std::size_t overlap = 0;
  bool full_agreement = true;
  double weight = 1.0;  // phi^(i-1)
  double sum = 0.0;
  for (std::size_t i = 1; i <= d; ++i) {
    if (i <= a.size()) {
      std::string_view x = a[i - 1];
      if (seen_b.count(x) != 0) ++overlap;
      if (!seen_a.insert(x).second) DuplicateDoc(x);
    }
    if (i <= b.size()) {
      std::string_view y = b[i - 1];
      if (seen_a.count(y) != 0) ++overlap;
      if (!seen_b.insert(y).second) DuplicateDoc(y);
    }
    if (overlap != i) full_agreement = false;
    sum += weight * static_cast<double>(overlap) / static_cast<double>(i);
    weight *= cfg.phi();
  }
  // weight == phi^d here.
  if (cfg.normalize()) {
    if (full_agreement) return 1.0;
    return (1.0 - cfg.phi()) * sum / (1.0 - weight);
  }
  return (1.0 - cfg.phi()) * sum;
}

double RboTopic(const Ranking& r, const Ranking& r_prime, const RboConfig& cfg) {
  if (!(r.topic() == r_prime.topic())) {
    throw Error(ErrorKind::kInvalid, "RBO compares rankings of one topic, got " +
                                         r.topic().str() + " and " +
                                         r_prime.topic().str());
  }
  const std::vector<std::string> a = r.DocIds();
  const std::vector<std::string> b = r_prime.DocIds();
  return Rbo(a, b, cfg);
}

ChangeScores MeanRbo(const RunFile& run, const RunFile& run_prime,
                     const RboConfig& cfg, const std::set<TopicId>& topic_filter,
                     Diagnostics* diagnostics) {
  if (topic_filter.empty()) {
    throw Error(ErrorKind::kInvalid, "mean RBO needs a non-empty topic set");
  }
  ChangeScores out;
  double sum = 0.0;
  for (const TopicId& topic : topic_filter) {
    const Ranking* r = run.Find(topic);
    const Ranking* r_prime = run_prime.Find(topic);
    double value = 0.0;
    if (r == nullptr || r_prime == nullptr) {
      const RunFile& missing = r == nullptr ? run : run_prime;
      Warn(diagnostics, "rbo",
           "topic " + topic.str() + " missing from run " + missing.system_tag() +
               " (" + missing.ee_label() + "); scored 0");
    } else {
      value = RboTopic(*r, *r_prime, cfg);
    }
    out.per_topic.emplace(topic, value);
    sum += value;
  }
  out.mean = sum / static_cast<double>(out.per_topic.size());
  return out;
}

double Rmse(const PerTopicScores& scores, const PerTopicScores& scores_prime) {
  if (!(scores.measure() == scores_prime.measure())) {
    throw Error(ErrorKind::kInvalid, "RMSE needs one measure, got " +
                                         scores.measure().ToString() + " and " +
                                         scores_prime.measure().ToString());
  }
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& [topic, value] : scores.scores()) {
    auto it = scores_prime.scores().find(topic);
    if (it == scores_prime.scores().end()) continue;
    const double diff = value - it->second;
    sum += diff * diff;
    ++n;
  }
  if (n == 0) {
    throw Error(ErrorKind::kUndefined, "RMSE over an empty topic intersection");
  }
  return std::sqrt(sum / static_cast<double>(n));
}

double ResultDelta(const ArpResult& arp_initial, const ArpResult& arp_evolved) {
  if (arp_initial.system_tag != arp_evolved.system_tag) {
    throw Error(ErrorKind::kInvalid, "ReΔ compares one system, got " +
                                         arp_initial.system_tag + " and " +
                                         arp_evolved.system_tag);
  }
  if (!(arp_initial.measure == arp_evolved.measure)) {
    throw Error(ErrorKind::kInvalid, "ReΔ compares one measure");
  }
  if (arp_initial.mean == 0.0) {
    throw Error(ErrorKind::kUndefined, "undefined ReΔ (zero baseline)");
  }
  return (arp_initial.mean - arp_evolved.mean) / arp_initial.mean;
}

double RelativeImprovement(const ArpResult& arp_system,
                           const ArpResult& arp_pivot) {
  if (arp_system.ee_label != arp_pivot.ee_label) {
    throw Error(ErrorKind::kInvalid, "RI compares within one environment, got " +
                                         arp_system.ee_label + " and " +
                                         arp_pivot.ee_label);
  }
  if (!(arp_system.measure == arp_pivot.measure)) {
    throw Error(ErrorKind::kInvalid, "RI compares one measure");
  }
  if (arp_pivot.mean == 0.0) {
    throw Error(ErrorKind::kUndefined, "undefined RI (zero pivot effectiveness)");
  }
  return (arp_system.mean - arp_pivot.mean) / arp_pivot.mean;
}

double DeltaRi(double ri_initial, double ri_evolved) {
  return ri_initial - ri_evolved;
}

}  // namespace tempeval
