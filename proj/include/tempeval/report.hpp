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

#ifndef TEMPEVAL_REPORT_HPP_
#define TEMPEVAL_REPORT_HPP_

// Deterministic CSV / Markdown / JSON rendering of longitudinal result
// matrices, CRUD change summaries and effectiveness tables.
//
// CSV and Markdown print reals with a fixed number of decimals (4 by
// default) rounded half-to-even on the exact binary value; JSON keeps full
// round-trip precision so ParseMatrixJson(Render(m, kJson)) == m.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tempeval/crud_diff.hpp"
#include "tempeval/model.hpp"

namespace tempeval {

enum class Format { kCsv, kMarkdown, kJson };

Format ParseFormat(std::string_view name);

// Which components evolved between the reference EE and the compared one:
// documents only (reference qrels reused) or documents and qrels.
enum class Scenario { kDprimeTQ, kDprimeTQprime };

std::string_view ScenarioName(Scenario s);  // "dtq" / "dtq-prime"
Scenario ParseScenario(std::string_view name);

struct RenderOptions {
  int precision = 4;
};

struct MeasureCells {
  std::optional<double> arp;
  std::optional<double> rmse;
  std::optional<double> re_delta;
  std::optional<double> delta_ri;
  std::optional<bool> significant;

  bool operator==(const MeasureCells&) const = default;
};

// One (system, EE) row. Pivot rows never carry delta RI.
struct ChangeReport {
  std::string system_tag;
  std::string ee_label;
  Scenario scenario = Scenario::kDprimeTQ;
  bool pivot = false;
  std::optional<double> rbo_mean;
  std::map<MeasureSpec, MeasureCells> cells;

  bool operator==(const ChangeReport&) const = default;
};

struct LongitudinalMatrix {
  std::string collection_label;
  std::vector<MeasureSpec> measures;  // column order
  std::vector<ChangeReport> rows;

  // Orders rows by system tag, then by position of the EE label in ee_order.
  void SortRows(const std::vector<std::string>& ee_order);

  bool operator==(const LongitudinalMatrix&) const = default;
};

struct EvaluationRow {
  std::string system_tag;
  std::string ee_label;
  MeasureSpec measure;
  std::optional<std::string> topic;  // empty for the ARP row
  double value = 0.0;
  std::size_t evaluated_topics = 0;
};

// Fixed-point decimal with round-half-even on the exact value; "-0.0000"
// is printed as "0.0000".
std::string FormatFixed(double value, int precision);

std::string Render(const LongitudinalMatrix& matrix, Format format,
                   const RenderOptions& options = {});
LongitudinalMatrix ParseMatrixJson(std::string_view json);

std::string RenderChangeSummary(const ChangeSummary& summary, Format format,
                                const RenderOptions& options = {});

std::string RenderEvaluation(const std::vector<EvaluationRow>& rows, Format format,
                             const RenderOptions& options = {});

}  // namespace tempeval

#endif  // TEMPEVAL_REPORT_HPP_
