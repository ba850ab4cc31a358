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

#ifndef TEMPEVAL_CRUD_DIFF_HPP_
#define TEMPEVAL_CRUD_DIFF_HPP_

// CREATE / UPDATE / DELETE classification of the change between two
// evaluation environments, per component.

#include <cstddef>
#include <optional>
#include <set>
#include <string>

#include "tempeval/model.hpp"

namespace tempeval {

class ComponentDiff {
 public:
  ComponentDiff(std::set<std::string> created, std::set<std::string> updated,
                std::set<std::string> deleted, std::size_t total_from,
                std::size_t total_to);

  const std::set<std::string>& created() const { return created_; }
  const std::set<std::string>& updated() const { return updated_; }
  const std::set<std::string>& deleted() const { return deleted_; }
  std::size_t total_from() const { return total_from_; }
  std::size_t total_to() const { return total_to_; }
  // (total_to - total_from) / total_from; empty when total_from == 0.
  std::optional<double> relative_delta() const;

  bool operator==(const ComponentDiff&) const = default;

 private:
  std::set<std::string> created_;
  std::set<std::string> updated_;
  std::set<std::string> deleted_;
  std::size_t total_from_;
  std::size_t total_to_;
};

struct ChangeSummary {
  std::string from_label;
  std::string to_label;
  ComponentDiff documents;
  ComponentDiff topics;
  ComponentDiff qrels;
};

// Updates are documents whose length differs; when both sides carry a
// content hash the hashes are compared instead.
ComponentDiff DiffDocuments(const CorpusSnapshot& a, const CorpusSnapshot& b);

// Updates are topics whose text differs, counted only when both texts exist.
ComponentDiff DiffTopics(const TopicSet& a, const TopicSet& b);

// Identifiers are "topic doc" pairs; updates are grade changes.
ComponentDiff DiffQrels(const Qrels& a, const Qrels& b);

ChangeSummary Summarize(const EvaluationEnvironment& a,
                        const EvaluationEnvironment& b);

}  // namespace tempeval

#endif  // TEMPEVAL_CRUD_DIFF_HPP_
