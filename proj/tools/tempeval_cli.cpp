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

// tempeval command-line front end. All work goes through the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tempeval/tempeval.h"

namespace {

struct OutputFlags {
  std::string format = "csv";
  int precision = 4;
  std::string out;
};

void AddOutputFlags(CLI::App* cmd, OutputFlags& flags) {
  cmd->add_option("--format", flags.format, "Output format")
      ->check(CLI::IsMember({"csv", "markdown", "json"}))
      ->capture_default_str();
  cmd->add_option("--precision", flags.precision, "Decimals for real-valued cells")
      ->check(CLI::Range(0, 17))
      ->capture_default_str();
  cmd->add_option("--out", flags.out, "Write output to this file instead of stdout");
}

tev_format FormatOf(const std::string& name) {
  if (name == "markdown") return TEV_FORMAT_MARKDOWN;
  if (name == "json") return TEV_FORMAT_JSON;
  return TEV_FORMAT_CSV;
}

// "t1=runs/bm25.t1" -> {"t1", "runs/bm25.t1"}
struct LabeledArg {
  std::string label;
  std::string path;
};

std::vector<LabeledArg> SplitLabeled(const std::vector<std::string>& args,
                                     const char* flag) {
  std::vector<LabeledArg> out;
  for (const std::string& a : args) {
    auto eq = a.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == a.size()) {
      throw CLI::ValidationError(flag, "expected LABEL=PATH, got '" + a + "'");
    }
    out.push_back({a.substr(0, eq), a.substr(eq + 1)});
  }
  return out;
}

std::vector<tev_labeled_path> View(const std::vector<LabeledArg>& args) {
  std::vector<tev_labeled_path> out;
  for (const LabeledArg& a : args) out.push_back({a.label.c_str(), a.path.c_str()});
  return out;
}

std::vector<const char*> View(const std::vector<std::string>& args) {
  std::vector<const char*> out;
  for (const std::string& a : args) out.push_back(a.c_str());
  return out;
}

std::vector<std::string> SplitComma(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t comma = s.find(',', start);
    if (comma == std::string::npos) comma = s.size();
    if (comma > start) out.push_back(s.substr(start, comma - start));
    start = comma + 1;
  }
  return out;
}

int Finish(tev_status status, tev_result* result, const std::string& out_path) {
  for (std::size_t i = 0; i < tev_result_warning_count(result); ++i) {
    std::cerr << tev_result_warning(result, i) << '\n';
  }
  if (status != TEV_OK) {
    std::cerr << "tempeval: " << tev_status_name(status) << ": " << tev_last_error()
              << '\n';
    tev_result_free(result);
    return tev_exit_code(status);
  }
  std::size_t length = 0;
  const char* text = tev_result_output(result, &length);
  int code = 0;
  if (out_path.empty()) {
    std::fwrite(text, 1, length, stdout);
  } else {
    std::ofstream out(out_path, std::ios::binary);
    out.write(text, static_cast<std::streamsize>(length));
    if (!out) {
      std::cerr << "tempeval: cannot write '" << out_path << "'\n";
      code = 2;
    }
  }
  tev_result_free(result);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Longitudinal evaluation of retrieval results across evolving test collections"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tev_version()));

  // diff
  std::string diff_config, diff_from, diff_to;
  OutputFlags diff_out;
  auto* diff = app.add_subcommand("diff", "CRUD change statistics between two environments");
  diff->add_option("--config", diff_config, "Environment config JSON")->required();
  diff->add_option("--from", diff_from, "Label of the earlier environment")->required();
  diff->add_option("--to", diff_to, "Label of the later environment")->required();
  AddOutputFlags(diff, diff_out);

  // evaluate
  std::string eval_config, eval_ee, eval_measures = "P@10,bpref,nDCG", eval_topics;
  std::vector<std::string> eval_runs;
  bool eval_per_topic = false;
  OutputFlags eval_out;
  auto* evaluate = app.add_subcommand("evaluate", "ARP (and per-topic scores) of runs");
  evaluate->add_option("--config", eval_config, "Environment config JSON")->required();
  evaluate->add_option("--run", eval_runs, "TREC run file (repeatable)")->required();
  evaluate->add_option("--ee", eval_ee, "Environment whose qrels are used")->required();
  evaluate->add_option("--measures", eval_measures, "Comma list of P@k, nDCG[@k], bpref")
      ->capture_default_str();
  evaluate->add_flag("--per-topic", eval_per_topic, "Also emit one row per topic");
  evaluate->add_option("--topics", eval_topics,
                       "'common' (topics shared by all environments) or a comma list");
  AddOutputFlags(evaluate, eval_out);

  // change
  std::string change_config, change_scenario = "dtq", change_measures = "P@10,bpref,nDCG";
  std::string change_significance = "pivot", change_collection, change_ees;
  std::vector<std::string> change_runs, change_pivots, change_qrels;
  double change_phi = 0.9, change_alpha = 0.05;
  int change_depth = 100;
  bool change_no_normalize = false;
  std::size_t change_family = 0;
  OutputFlags change_out;
  auto* change = app.add_subcommand("change", "Longitudinal result matrix (RBO, RMSE, ReΔ, ΔRI)");
  change->add_option("--config", change_config, "Environment config JSON")->required();
  change->add_option("--run", change_runs, "LABEL=PATH run of an experimental system")
      ->required();
  change->add_option("--pivot", change_pivots, "LABEL=PATH run of the pivot system");
  change->add_option("--qrels", change_qrels,
                     "LABEL=PATH qrels replacing the config's (dtq-prime only)");
  change->add_option("--ees", change_ees, "Comma list of environments, reference first");
  change->add_option("--scenario", change_scenario, "dtq or dtq-prime")
      ->check(CLI::IsMember({"dtq", "dtq-prime"}))
      ->capture_default_str();
  change->add_option("--measures", change_measures, "Comma list of P@k, nDCG[@k], bpref")
      ->capture_default_str();
  change->add_option("--phi", change_phi, "RBO persistence")->capture_default_str();
  change->add_option("--rbo-depth", change_depth, "RBO evaluation depth")
      ->capture_default_str();
  change->add_flag("--no-rbo-normalize", change_no_normalize,
                   "Report raw truncated RBO instead of normalizing by 1 - phi^d");
  change->add_option("--alpha", change_alpha, "Significance level")->capture_default_str();
  change->add_option("--family-size", change_family,
                     "Bonferroni family size (0 = systems x environments)")
      ->capture_default_str();
  change->add_option("--significance", change_significance, "pivot or temporal")
      ->check(CLI::IsMember({"pivot", "temporal"}))
      ->capture_default_str();
  change->add_option("--collection", change_collection, "Collection label for the report");
  AddOutputFlags(change, change_out);

  // simulate
  std::string sim_manifest, sim_qrels, sim_topics, sim_out_dir;
  int sim_slices = 3;
  auto* simulate = app.add_subcommand("simulate",
                                      "Split a dated corpus into append-only environments");
  simulate->add_option("--manifest", sim_manifest, "Corpus manifest (JSON lines)")->required();
  simulate->add_option("--qrels", sim_qrels, "TREC qrels of the full corpus")->required();
  simulate->add_option("--topics", sim_topics, "Topics file (id<TAB>text)");
  simulate->add_option("--slices", sim_slices, "Number of environments")->capture_default_str();
  simulate->add_option("--out-dir", sim_out_dir, "Output directory")->required();

  // report
  std::string report_input;
  OutputFlags report_out;
  auto* report = app.add_subcommand("report", "Re-render a matrix written with --format json");
  report->add_option("--input", report_input, "Matrix JSON")->required();
  AddOutputFlags(report, report_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  tev_result* result = nullptr;
  try {
    if (*diff) {
      tev_diff_request req;
      tev_diff_request_init(&req);
      req.config_path = diff_config.c_str();
      req.from_label = diff_from.c_str();
      req.to_label = diff_to.c_str();
      req.format = FormatOf(diff_out.format);
      req.precision = diff_out.precision;
      const tev_status status = tev_diff(&req, &result);
      return Finish(status, result, diff_out.out);
    }
    if (*evaluate) {
      tev_evaluate_request req;
      tev_evaluate_request_init(&req);
      auto runs = View(eval_runs);
      std::vector<std::string> topic_list;
      req.config_path = eval_config.c_str();
      req.run_paths = runs.data();
      req.run_count = runs.size();
      req.ee_label = eval_ee.c_str();
      req.measures = eval_measures.c_str();
      req.per_topic = eval_per_topic ? 1 : 0;
      if (eval_topics == "common") {
        req.topic_filter = TEV_TOPICS_COMMON;
      } else if (!eval_topics.empty()) {
        topic_list = SplitComma(eval_topics);
        req.topic_filter = TEV_TOPICS_EXPLICIT;
      }
      auto topics = View(topic_list);
      req.topics = topics.data();
      req.topic_count = topics.size();
      req.format = FormatOf(eval_out.format);
      req.precision = eval_out.precision;
      const tev_status status = tev_evaluate(&req, &result);
      return Finish(status, result, eval_out.out);
    }
    if (*change) {
      const auto runs = SplitLabeled(change_runs, "--run");
      const auto pivots = SplitLabeled(change_pivots, "--pivot");
      const auto qrels = SplitLabeled(change_qrels, "--qrels");
      const auto ees = SplitComma(change_ees);
      auto run_view = View(runs);
      auto pivot_view = View(pivots);
      auto qrels_view = View(qrels);
      auto ee_view = View(ees);
      tev_change_request req;
      tev_change_request_init(&req);
      req.config_path = change_config.c_str();
      req.runs = run_view.data();
      req.run_count = run_view.size();
      req.pivot_runs = pivot_view.data();
      req.pivot_count = pivot_view.size();
      req.qrels_overrides = qrels_view.data();
      req.qrels_override_count = qrels_view.size();
      req.ee_labels = ee_view.data();
      req.ee_label_count = ee_view.size();
      req.scenario = change_scenario == "dtq" ? TEV_SCENARIO_DTQ : TEV_SCENARIO_DTQ_PRIME;
      req.measures = change_measures.c_str();
      req.rbo_phi = change_phi;
      req.rbo_depth = change_depth;
      req.rbo_normalize = change_no_normalize ? 0 : 1;
      req.alpha = change_alpha;
      req.family_size = change_family;
      req.significance = change_significance == "temporal" ? TEV_SIGNIFICANCE_TEMPORAL
                                                           : TEV_SIGNIFICANCE_PIVOT;
      req.collection_label = change_collection.c_str();
      req.format = FormatOf(change_out.format);
      req.precision = change_out.precision;
      const tev_status status = tev_change(&req, &result);
      return Finish(status, result, change_out.out);
    }
    if (*simulate) {
      tev_simulate_request req;
      tev_simulate_request_init(&req);
      req.manifest_path = sim_manifest.c_str();
      req.qrels_path = sim_qrels.c_str();
      req.topics_path = sim_topics.empty() ? nullptr : sim_topics.c_str();
      req.slices = sim_slices;
      req.out_dir = sim_out_dir.c_str();
      const tev_status status = tev_simulate(&req, &result);
      return Finish(status, result, "");
    }
    if (*report) {
      tev_report_request req;
      tev_report_request_init(&req);
      req.input_path = report_input.c_str();
      req.format = FormatOf(report_out.format);
      req.precision = report_out.precision;
      const tev_status status = tev_report(&req, &result);
      return Finish(status, result, report_out.out);
    }
  } catch (const CLI::Error& e) {
    std::cerr << "tempeval: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
