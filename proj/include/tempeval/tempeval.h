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

/*
 * C interface to the tempeval library.
 *
 * Every entry point returns a tev_status. On failure a human-readable
 * message is available from tev_last_error() on the calling thread until the
 * next call into the library from that thread.
 *
 * Command entry points (tev_diff, tev_evaluate, tev_change, tev_simulate)
 * produce a tev_result handle that owns the rendered output and any
 * warnings; release it with tev_result_free(). Request structs must be
 * initialised with the matching *_init() function before use so that new
 * fields keep sensible defaults.
 */
#ifndef TEMPEVAL_TEMPEVAL_H_
#define TEMPEVAL_TEMPEVAL_H_

#include <stddef.h>

#if defined(_WIN32)
#if defined(TEMPEVAL_BUILDING_LIBRARY)
#define TEV_API __declspec(dllexport)
#else
#define TEV_API __declspec(dllimport)
#endif
#else
#define TEV_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tev_status {
  TEV_OK = 0,
  TEV_ERROR_INTERNAL = 1,
  TEV_ERROR_USAGE = 2,
  TEV_ERROR_INVALID = 3,
  TEV_ERROR_PARSE = 4,
  TEV_ERROR_IO = 5,
  TEV_ERROR_UNDEFINED = 6
} tev_status;

typedef enum tev_format {
  TEV_FORMAT_CSV = 0,
  TEV_FORMAT_MARKDOWN = 1,
  TEV_FORMAT_JSON = 2
} tev_format;

typedef enum tev_scenario {
  TEV_SCENARIO_DTQ = 0,       /* documents evolve, reference qrels reused */
  TEV_SCENARIO_DTQ_PRIME = 1  /* documents and qrels evolve */
} tev_scenario;

typedef enum tev_significance_mode {
  TEV_SIGNIFICANCE_PIVOT = 0,
  TEV_SIGNIFICANCE_TEMPORAL = 1
} tev_significance_mode;

/* Opaque command result. */
typedef struct tev_result tev_result;

/* A file bound to an evaluation environment label. */
typedef struct tev_labeled_path {
  const char* ee_label;
  const char* path;
} tev_labeled_path;

TEV_API const char* tev_version(void);
TEV_API const char* tev_last_error(void);
TEV_API const char* tev_status_name(tev_status status);

/* Process exit code for a status: 0 ok, 1 internal error, 2 usage or
 * validation error. */
TEV_API int tev_exit_code(tev_status status);

TEV_API const char* tev_result_output(const tev_result* result, size_t* length);
TEV_API size_t tev_result_warning_count(const tev_result* result);
TEV_API const char* tev_result_warning(const tev_result* result, size_t index);
TEV_API void tev_result_free(tev_result* result);

/* ---- commands ---------------------------------------------------------- */

typedef struct tev_diff_request {
  const char* config_path;
  const char* from_label;
  const char* to_label;
  tev_format format;
  int precision;
} tev_diff_request;

TEV_API void tev_diff_request_init(tev_diff_request* request);
TEV_API tev_status tev_diff(const tev_diff_request* request, tev_result** out);

typedef enum tev_topic_filter {
  TEV_TOPICS_ALL = 0,
  TEV_TOPICS_COMMON = 1,
  TEV_TOPICS_EXPLICIT = 2
} tev_topic_filter;

typedef struct tev_evaluate_request {
  const char* config_path;
  const char* const* run_paths;
  size_t run_count;
  const char* ee_label;
  const char* measures; /* comma list, e.g. "P@10,bpref,nDCG" */
  int per_topic;
  tev_topic_filter topic_filter;
  const char* const* topics; /* for TEV_TOPICS_EXPLICIT */
  size_t topic_count;
  tev_format format;
  int precision;
} tev_evaluate_request;

TEV_API void tev_evaluate_request_init(tev_evaluate_request* request);
TEV_API tev_status tev_evaluate(const tev_evaluate_request* request, tev_result** out);

typedef struct tev_change_request {
  const char* config_path;
  const tev_labeled_path* runs;
  size_t run_count;
  const tev_labeled_path* pivot_runs;
  size_t pivot_count;
  const tev_labeled_path* qrels_overrides;
  size_t qrels_override_count;
  const char* const* ee_labels; /* optional subset, reference first */
  size_t ee_label_count;
  tev_scenario scenario;
  const char* measures;
  double rbo_phi;
  int rbo_depth;
  int rbo_normalize;
  double alpha;
  size_t family_size; /* 0 derives systems x environments */
  tev_significance_mode significance;
  const char* collection_label;
  tev_format format;
  int precision;
} tev_change_request;

TEV_API void tev_change_request_init(tev_change_request* request);
TEV_API tev_status tev_change(const tev_change_request* request, tev_result** out);

typedef struct tev_simulate_request {
  const char* manifest_path;
  const char* qrels_path;
  const char* topics_path; /* optional */
  int slices;
  const char* out_dir;
} tev_simulate_request;

TEV_API void tev_simulate_request_init(tev_simulate_request* request);
TEV_API tev_status tev_simulate(const tev_simulate_request* request, tev_result** out);

/* Re-renders a longitudinal matrix previously written as JSON. */
typedef struct tev_report_request {
  const char* input_path;
  tev_format format;
  int precision;
} tev_report_request;

TEV_API void tev_report_request_init(tev_report_request* request);
TEV_API tev_status tev_report(const tev_report_request* request, tev_result** out);

/* ---- measures ---------------------------------------------------------- */

/* Truncated rank-biased overlap of two doc-id lists (ids unique per list). */
TEV_API tev_status tev_rbo(const char* const* a, size_t a_count, const char* const* b,
                           size_t b_count, double phi, int depth, int normalize,
                           double* out);
TEV_API tev_status tev_result_delta(double arp_initial, double arp_evolved, double* out);
TEV_API tev_status tev_relative_improvement(double arp_system, double arp_pivot,
                                            double* out);
TEV_API double tev_delta_ri(double ri_initial, double ri_evolved);
TEV_API tev_status tev_rmse(const double* a, const double* b, size_t n, double* out);
TEV_API tev_status tev_paired_t_test(const double* a, const double* b, size_t n,
                                     double* t_statistic, double* p_value);
TEV_API tev_status tev_bonferroni(double alpha, size_t m, double* out);

#ifdef __cplusplus
}
#endif

#endif /* TEMPEVAL_TEMPEVAL_H_ */
