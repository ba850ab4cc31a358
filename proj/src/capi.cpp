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

#include "tempeval/tempeval.h"

#include <exception>
#include <map>
#include <span>
#include <new>
#include <string>
#include <vector>

#include "tempeval/change_measures.hpp"
#include "tempeval/effectiveness.hpp"
#include "tempeval/pipeline.hpp"
#include "tempeval/significance.hpp"

struct tev_result {
  std::string output;
  std::vector<std::string> warnings;
};

namespace {

using namespace tempeval;

thread_local std::string last_error;

tev_status StatusOf(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalid:
      return TEV_ERROR_INVALID;
    case ErrorKind::kParse:
      return TEV_ERROR_PARSE;
    case ErrorKind::kIo:
      return TEV_ERROR_IO;
    case ErrorKind::kUsage:
      return TEV_ERROR_USAGE;
    case ErrorKind::kUndefined:
      return TEV_ERROR_UNDEFINED;
  }
  return TEV_ERROR_INTERNAL;
}

// Runs fn, translating exceptions into status codes and last_error.
template <typename Fn>
tev_status Guard(Fn&& fn) {
  last_error.clear();
  try {
    fn();
    return TEV_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return StatusOf(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return TEV_ERROR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return TEV_ERROR_INTERNAL;
  } catch (...) {
    last_error = "unknown internal error";
    return TEV_ERROR_INTERNAL;
  }
}

std::string Required(const char* s, const char* what) {
  if (s == nullptr || *s == '\0') {
    throw Error(ErrorKind::kUsage, std::string(what) + " is required");
  }
  return s;
}

Format FormatOf(tev_format f) {
  switch (f) {
    case TEV_FORMAT_CSV:
      return Format::kCsv;
    case TEV_FORMAT_MARKDOWN:
      return Format::kMarkdown;
    case TEV_FORMAT_JSON:
      return Format::kJson;
  }
  throw Error(ErrorKind::kUsage, "unknown output format");
}

std::vector<LabeledPath> Paths(const tev_labeled_path* items, std::size_t n) {
  std::vector<LabeledPath> out;
  if (n > 0 && items == nullptr) throw Error(ErrorKind::kUsage, "null path list");
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back({Required(items[i].ee_label, "environment label"),
                   Required(items[i].path, "path")});
  }
  return out;
}

std::vector<std::string> Strings(const char* const* items, std::size_t n) {
  std::vector<std::string> out;
  if (n > 0 && items == nullptr) throw Error(ErrorKind::kUsage, "null string list");
  for (std::size_t i = 0; i < n; ++i) out.push_back(Required(items[i], "list entry"));
  return out;
}

void Publish(CommandOutput&& result, tev_result** out) {
  if (out == nullptr) return;
  auto* r = new tev_result;
  r->output = std::move(result.text);
  for (const Diagnostic& d : result.diagnostics) r->warnings.push_back(FormatDiagnostic(d));
  *out = r;
}

void CheckOut(void* out) {
  if (out == nullptr) throw Error(ErrorKind::kUsage, "null output pointer");
}

}  // namespace

extern "C" {

const char* tev_version(void) { return "1.0.0"; }

const char* tev_last_error(void) { return last_error.c_str(); }

const char* tev_status_name(tev_status status) {
  switch (status) {
    case TEV_OK:
      return "ok";
    case TEV_ERROR_INTERNAL:
      return "internal error";
    case TEV_ERROR_USAGE:
      return "usage error";
    case TEV_ERROR_INVALID:
      return "invalid input";
    case TEV_ERROR_PARSE:
      return "parse error";
    case TEV_ERROR_IO:
      return "i/o error";
    case TEV_ERROR_UNDEFINED:
      return "undefined";
  }
  return "unknown status";
}

int tev_exit_code(tev_status status) {
  if (status == TEV_OK) return 0;
  if (status == TEV_ERROR_INTERNAL) return 1;
  return 2;
}

const char* tev_result_output(const tev_result* result, size_t* length) {
  if (result == nullptr) {
    if (length) *length = 0;
    return "";
  }
  if (length) *length = result->output.size();
  return result->output.c_str();
}

size_t tev_result_warning_count(const tev_result* result) {
  return result == nullptr ? 0 : result->warnings.size();
}

const char* tev_result_warning(const tev_result* result, size_t index) {
  if (result == nullptr || index >= result->warnings.size()) return nullptr;
  return result->warnings[index].c_str();
}

void tev_result_free(tev_result* result) { delete result; }

void tev_diff_request_init(tev_diff_request* request) {
  if (request == nullptr) return;
  *request = tev_diff_request{};
  request->format = TEV_FORMAT_CSV;
  request->precision = 4;
}

tev_status tev_diff(const tev_diff_request* request, tev_result** out) {
  return Guard([&] {
    CheckOut(out);
    if (request == nullptr) throw Error(ErrorKind::kUsage, "null request");
    DiffRequest r;
    r.config = Required(request->config_path, "config path");
    r.from_label = Required(request->from_label, "from label");
    r.to_label = Required(request->to_label, "to label");
    r.format = FormatOf(request->format);
    r.render.precision = request->precision;
    Publish(RunDiff(r), out);
  });
}

void tev_evaluate_request_init(tev_evaluate_request* request) {
  if (request == nullptr) return;
  *request = tev_evaluate_request{};
  request->measures = "P@10,bpref,nDCG";
  request->topic_filter = TEV_TOPICS_ALL;
  request->format = TEV_FORMAT_CSV;
  request->precision = 4;
}

tev_status tev_evaluate(const tev_evaluate_request* request, tev_result** out) {
  return Guard([&] {
    CheckOut(out);
    if (request == nullptr) throw Error(ErrorKind::kUsage, "null request");
    EvaluateRequest r;
    r.config = Required(request->config_path, "config path");
    for (const std::string& p : Strings(request->run_paths, request->run_count)) {
      r.runs.emplace_back(p);
    }
    r.ee_label = Required(request->ee_label, "environment label");
    r.measures = MeasureSpec::ParseList(Required(request->measures, "measures"));
    r.per_topic = request->per_topic != 0;
    switch (request->topic_filter) {
      case TEV_TOPICS_ALL:
        r.topic_mode = TopicFilterMode::kNone;
        break;
      case TEV_TOPICS_COMMON:
        r.topic_mode = TopicFilterMode::kCommon;
        break;
      case TEV_TOPICS_EXPLICIT:
        r.topic_mode = TopicFilterMode::kExplicit;
        r.topics = Strings(request->topics, request->topic_count);
        break;
      default:
        throw Error(ErrorKind::kUsage, "unknown topic filter");
    }
    r.format = FormatOf(request->format);
    r.render.precision = request->precision;
    Publish(RunEvaluate(r), out);
  });
}

void tev_change_request_init(tev_change_request* request) {
  if (request == nullptr) return;
  *request = tev_change_request{};
  request->scenario = TEV_SCENARIO_DTQ;
  request->measures = "P@10,bpref,nDCG";
  request->rbo_phi = RboConfig::kDefaultPhi;
  request->rbo_depth = RboConfig::kDefaultDepth;
  request->rbo_normalize = 1;
  request->alpha = 0.05;
  request->family_size = 0;
  request->significance = TEV_SIGNIFICANCE_PIVOT;
  request->collection_label = "";
  request->format = TEV_FORMAT_CSV;
  request->precision = 4;
}

tev_status tev_change(const tev_change_request* request, tev_result** out) {
  return Guard([&] {
    CheckOut(out);
    if (request == nullptr) throw Error(ErrorKind::kUsage, "null request");
    ChangeRequest r;
    r.config = Required(request->config_path, "config path");
    r.runs = Paths(request->runs, request->run_count);
    r.pivot_runs = Paths(request->pivot_runs, request->pivot_count);
    r.qrels_overrides = Paths(request->qrels_overrides, request->qrels_override_count);
    r.ee_labels = Strings(request->ee_labels, request->ee_label_count);
    switch (request->scenario) {
      case TEV_SCENARIO_DTQ:
        r.options.scenario = Scenario::kDprimeTQ;
        break;
      case TEV_SCENARIO_DTQ_PRIME:
        r.options.scenario = Scenario::kDprimeTQprime;
        break;
      default:
        throw Error(ErrorKind::kUsage, "unknown scenario");
    }
    r.options.measures = MeasureSpec::ParseList(Required(request->measures, "measures"));
    try {
      r.options.rbo = RboConfig(request->rbo_phi, request->rbo_depth,
                                request->rbo_normalize != 0);
    } catch (const Error& e) {
      throw Error(ErrorKind::kUsage, e.what());
    }
    if (!(request->alpha > 0.0 && request->alpha <= 1.0)) {
      throw Error(ErrorKind::kUsage, "alpha must lie in (0,1]");
    }
    r.options.alpha = request->alpha;
    r.options.family_size = request->family_size;
    r.options.significance = request->significance == TEV_SIGNIFICANCE_TEMPORAL
                                 ? SignificanceMode::kTemporal
                                 : SignificanceMode::kPivot;
    r.options.collection_label =
        request->collection_label == nullptr ? "" : request->collection_label;
    r.format = FormatOf(request->format);
    r.render.precision = request->precision;
    Publish(RunChange(r), out);
  });
}

void tev_simulate_request_init(tev_simulate_request* request) {
  if (request == nullptr) return;
  *request = tev_simulate_request{};
  request->slices = 3;
}

tev_status tev_simulate(const tev_simulate_request* request, tev_result** out) {
  return Guard([&] {
    CheckOut(out);
    if (request == nullptr) throw Error(ErrorKind::kUsage, "null request");
    SimulateRequest r;
    r.manifest = Required(request->manifest_path, "manifest path");
    r.qrels = Required(request->qrels_path, "qrels path");
    if (request->topics_path != nullptr && *request->topics_path != '\0') {
      r.topics = std::filesystem::path(request->topics_path);
    }
    if (request->slices < 2) throw Error(ErrorKind::kUsage, "slices must be >= 2");
    r.slices = request->slices;
    r.out_dir = Required(request->out_dir, "output directory");
    Publish(RunSimulate(r), out);
  });
}

void tev_report_request_init(tev_report_request* request) {
  if (request == nullptr) return;
  *request = tev_report_request{};
  request->format = TEV_FORMAT_CSV;
  request->precision = 4;
}

tev_status tev_report(const tev_report_request* request, tev_result** out) {
  return Guard([&] {
    CheckOut(out);
    if (request == nullptr) throw Error(ErrorKind::kUsage, "null request");
    ReportRequest r;
    r.input = Required(request->input_path, "input path");
    r.format = FormatOf(request->format);
    r.render.precision = request->precision;
    Publish(RunReport(r), out);
  });
}

tev_status tev_rbo(const char* const* a, size_t a_count, const char* const* b,
                   size_t b_count, double phi, int depth, int normalize, double* out) {
  return Guard([&] {
    CheckOut(out);
    const std::vector<std::string> ra = Strings(a, a_count);
    const std::vector<std::string> rb = Strings(b, b_count);
    *out = Rbo(ra, rb, RboConfig(phi, depth, normalize != 0));
  });
}

tev_status tev_result_delta(double arp_initial, double arp_evolved, double* out) {
  return Guard([&] {
    CheckOut(out);
    const MeasureSpec m = MeasureSpec::Bpref();
    *out = ResultDelta(ArpResult{m, "s", "ee", arp_initial, 0},
                       ArpResult{m, "s", "ee'", arp_evolved, 0});
  });
}

tev_status tev_relative_improvement(double arp_system, double arp_pivot, double* out) {
  return Guard([&] {
    CheckOut(out);
    const MeasureSpec m = MeasureSpec::Bpref();
    *out = RelativeImprovement(ArpResult{m, "s", "ee", arp_system, 0},
                               ArpResult{m, "p", "ee", arp_pivot, 0});
  });
}

double tev_delta_ri(double ri_initial, double ri_evolved) {
  return DeltaRi(ri_initial, ri_evolved);
}

tev_status tev_rmse(const double* a, const double* b, size_t n, double* out) {
  return Guard([&] {
    CheckOut(out);
    if (n > 0 && (a == nullptr || b == nullptr)) {
      throw Error(ErrorKind::kUsage, "null score array");
    }
    std::map<TopicId, double> sa, sb;
    for (size_t i = 0; i < n; ++i) {
      const TopicId t(std::to_string(i));
      sa.emplace(t, a[i]);
      sb.emplace(t, b[i]);
    }
    const MeasureSpec m = MeasureSpec::Bpref();
    *out = Rmse(PerTopicScores(m, "s", "ee", std::move(sa)),
                PerTopicScores(m, "s", "ee'", std::move(sb)));
  });
}

tev_status tev_paired_t_test(const double* a, const double* b, size_t n,
                             double* t_statistic, double* p_value) {
  return Guard([&] {
    if (t_statistic == nullptr || p_value == nullptr) {
      throw Error(ErrorKind::kUsage, "null output pointer");
    }
    if (n > 0 && (a == nullptr || b == nullptr)) {
      throw Error(ErrorKind::kUsage, "null sample array");
    }
    const PairedTTest r = PairedTTestValues(std::span<const double>(a, n),
                                            std::span<const double>(b, n));
    *t_statistic = r.t_statistic;
    *p_value = r.p_value;
  });
}

tev_status tev_bonferroni(double alpha, size_t m, double* out) {
  return Guard([&] {
    CheckOut(out);
    *out = Bonferroni(alpha, m);
  });
}

}  // extern "C"
