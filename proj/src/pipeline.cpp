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

#include "tempeval/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "tempeval/crud_diff.hpp"
#include "tempeval/effectiveness.hpp"
#include "tempeval/ingest.hpp"
#include "tempeval/significance.hpp"
#include "tempeval/simulate.hpp"

namespace tempeval {
namespace {

std::string JoinLabels(const std::vector<EEConfig>& configs) {
  std::string out;
  for (const EEConfig& c : configs) {
    if (!out.empty()) out += ", ";
    out += c.label;
  }
  return out;
}

const EEConfig& FindConfig(const std::vector<EEConfig>& configs,
                           const std::string& label) {
  for (const EEConfig& c : configs) {
    if (c.label == label) return c;
  }
  throw Error(ErrorKind::kUsage, "unknown environment label '" + label +
                                     "' (known: " + JoinLabels(configs) + ")");
}

// Runs the computation, turning undefined quantities into empty cells.
template <typename Fn>
std::optional<double> Guarded(Diagnostics* diagnostics, const std::string& where,
                              Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kUndefined && e.kind() != ErrorKind::kInvalid) throw;
    Warn(diagnostics, where, e.what());
    return std::nullopt;
  }
}

void WriteFile(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw Error(ErrorKind::kIo, "failed writing '" + path.string() + "'");
}

}  // namespace

CommandOutput RunDiff(const DiffRequest& request) {
  CommandOutput out;
  const auto configs = LoadConfig(request.config);
  const EEConfig& from = FindConfig(configs, request.from_label);
  const EEConfig& to = FindConfig(configs, request.to_label);
  const EvaluationEnvironment a = LoadEnvironment(from, &out.diagnostics);
  const EvaluationEnvironment b =
      &from == &to ? a : LoadEnvironment(to, &out.diagnostics);
  out.text = RenderChangeSummary(Summarize(a, b), request.format, request.render);
  return out;
}

CommandOutput RunEvaluate(const EvaluateRequest& request) {
  CommandOutput out;
  if (request.measures.empty()) throw Error(ErrorKind::kUsage, "no measures given");
  if (request.runs.empty()) throw Error(ErrorKind::kUsage, "no run files given");
  const auto configs = LoadConfig(request.config);
  const EEConfig& target = FindConfig(configs, request.ee_label);

  std::optional<std::set<TopicId>> filter;
  EvaluationEnvironment ee;
  if (request.topic_mode == TopicFilterMode::kCommon) {
    std::vector<EvaluationEnvironment> all;
    for (const EEConfig& c : configs) {
      all.push_back(LoadEnvironment(c, &out.diagnostics));
      if (c.label == target.label) ee = all.back();
    }
    filter = CommonTopics(all, &out.diagnostics);
  } else {
    ee = LoadEnvironment(target, &out.diagnostics);
    if (request.topic_mode == TopicFilterMode::kExplicit) {
      filter.emplace();
      for (const std::string& t : request.topics) filter->insert(TopicId(t));
    }
  }

  std::vector<EvaluationRow> rows;
  for (const auto& path : request.runs) {
    const RunFile run = LoadRun(path, ee.label, &out.diagnostics);
    const auto judged = ee.qrels.Topics();
    const bool any = std::any_of(run.rankings().begin(), run.rankings().end(),
                                 [&](const auto& p) { return judged.count(p.first) != 0; });
    if (!any) {
      throw Error(ErrorKind::kInvalid, "run " + path.string() + " (" + run.system_tag() +
                                           ") shares no topics with the qrels of " +
                                           ee.label);
    }
    for (const MeasureSpec& m : request.measures) {
      const PerTopicScores scores = EvaluateRun(run, ee.qrels, m, filter);
      const ArpResult arp = Arp(scores);
      rows.push_back({run.system_tag(), ee.label, m, std::nullopt, arp.mean,
                      arp.evaluated_topic_count});
      if (request.per_topic) {
        for (const auto& [topic, value] : scores.scores()) {
          rows.push_back({run.system_tag(), ee.label, m, topic.str(), value, 1});
        }
      }
    }
  }
  out.text = RenderEvaluation(rows, request.format, request.render);
  return out;
}

LongitudinalMatrix BuildChangeMatrix(const std::vector<EvaluationEnvironment>& ees,
                                     const std::vector<RunFile>& runs,
                                     const std::vector<RunFile>& pivot_runs,
                                     const ChangeOptions& options,
                                     Diagnostics* diagnostics) {
  if (ees.empty()) throw Error(ErrorKind::kUsage, "no environments to compare");
  if (options.measures.empty()) throw Error(ErrorKind::kUsage, "no measures given");
  if (options.scenario == Scenario::kDprimeTQprime &&
      options.significance == SignificanceMode::kTemporal) {
    throw Error(ErrorKind::kUsage,
                "temporal significance pairs topics across environments and needs "
                "shared qrels; use it with the dtq scenario");
  }
  std::vector<std::string> order;
  for (const auto& ee : ees) order.push_back(ee.label);
  auto known = [&](const std::string& label) {
    return std::find(order.begin(), order.end(), label) != order.end();
  };

  // system tag -> ee label -> run
  std::map<std::string, std::map<std::string, const RunFile*>> by_system;
  std::optional<std::string> pivot_tag;
  for (const RunFile& run : pivot_runs) {
    if (pivot_tag && *pivot_tag != run.system_tag()) {
      throw Error(ErrorKind::kUsage, "pivot runs carry different system tags ('" +
                                         *pivot_tag + "' and '" + run.system_tag() + "')");
    }
    pivot_tag = run.system_tag();
  }
  auto add = [&](const RunFile& run) {
    if (!known(run.ee_label())) {
      throw Error(ErrorKind::kUsage, "run " + run.system_tag() +
                                         " refers to unknown environment '" +
                                         run.ee_label() + "'");
    }
    auto [it, inserted] = by_system[run.system_tag()].emplace(run.ee_label(), &run);
    if (!inserted && !(*it->second == run)) {
      throw Error(ErrorKind::kUsage, "two different runs for system " + run.system_tag() +
                                         " in " + run.ee_label());
    }
  };
  for (const RunFile& run : runs) add(run);
  for (const RunFile& run : pivot_runs) add(run);

  std::size_t experimental = 0;
  for (const auto& [tag, per_ee] : by_system) {
    const bool is_pivot = pivot_tag && tag == *pivot_tag;
    if (!is_pivot) ++experimental;
    for (const std::string& label : order) {
      if (per_ee.count(label) != 0) continue;
      if (is_pivot) {
        Warn(diagnostics, "pivot " + tag,
             "no pivot run for " + label + "; delta RI left empty there");
      } else {
        throw Error(ErrorKind::kUsage, "missing run of system " + tag + " for " + label);
      }
    }
  }
  if (by_system.empty()) throw Error(ErrorKind::kUsage, "no runs given");

  const std::set<TopicId> topics = CommonTopics(ees, diagnostics);
  if (topics.empty()) {
    throw Error(ErrorKind::kInvalid, "environments share no common topics");
  }
  const std::string& ref = order.front();
  auto qrels_for = [&](std::size_t ee_index) -> const Qrels& {
    return options.scenario == Scenario::kDprimeTQ ? ees.front().qrels
                                                   : ees[ee_index].qrels;
  };

  // scores[tag][ee][measure]
  std::map<std::string, std::map<std::string, std::map<MeasureSpec, PerTopicScores>>> scores;
  std::map<std::string, std::map<std::string, std::map<MeasureSpec, std::optional<ArpResult>>>>
      arps;
  for (const auto& [tag, per_ee] : by_system) {
    for (std::size_t e = 0; e < ees.size(); ++e) {
      auto it = per_ee.find(order[e]);
      if (it == per_ee.end()) continue;
      for (const MeasureSpec& m : options.measures) {
        PerTopicScores s = EvaluateRun(*it->second, qrels_for(e), m, topics);
        std::optional<ArpResult> arp;
        if (s.size() == 0) {
          Warn(diagnostics, tag + " " + order[e],
               "no evaluated topics for " + m.ToString() + "; ARP left empty");
        } else {
          arp = Arp(s);
        }
        scores[tag][order[e]].emplace(m, std::move(s));
        arps[tag][order[e]][m] = arp;
      }
    }
  }

  std::size_t family = options.family_size;
  if (family == 0) {
    family = options.significance == SignificanceMode::kPivot
                 ? experimental * ees.size()
                 : by_system.size() * (ees.size() > 1 ? ees.size() - 1 : 1);
    family = std::max<std::size_t>(family, 1);
  }

  LongitudinalMatrix matrix;
  matrix.collection_label = options.collection_label;
  matrix.measures = options.measures;
  for (const auto& [tag, per_ee] : by_system) {
    const bool is_pivot = pivot_tag && tag == *pivot_tag;
    for (std::size_t e = 0; e < ees.size(); ++e) {
      const std::string& label = order[e];
      auto run_it = per_ee.find(label);
      if (run_it == per_ee.end()) continue;
      const bool is_ref = e == 0;
      const std::string where = tag + " " + label;

      ChangeReport row;
      row.system_tag = tag;
      row.ee_label = label;
      row.scenario = options.scenario;
      row.pivot = is_pivot;
      if (options.scenario == Scenario::kDprimeTQ) {
        if (is_ref) {
          row.rbo_mean = 1.0;
        } else if (auto ref_run = per_ee.find(ref); ref_run != per_ee.end()) {
          row.rbo_mean =
              MeanRbo(*ref_run->second, *run_it->second, options.rbo, topics, diagnostics)
                  .mean;
        }
      }

      for (const MeasureSpec& m : options.measures) {
        MeasureCells cells;
        const auto& arp = arps[tag][label][m];
        if (arp) cells.arp = arp->mean;
        const bool has_ref = per_ee.count(ref) != 0;
        const auto& ref_arp = has_ref ? arps[tag][ref][m] : std::optional<ArpResult>{};

        if (options.scenario == Scenario::kDprimeTQ) {
          if (is_ref) {
            cells.rmse = 0.0;
          } else if (has_ref) {
            cells.rmse = Guarded(diagnostics, where, [&] {
              return Rmse(scores[tag][ref].at(m), scores[tag][label].at(m));
            });
          }
        }

        if (is_ref) {
          cells.re_delta = 0.0;
        } else if (ref_arp && arp) {
          cells.re_delta =
              Guarded(diagnostics, where, [&] { return ResultDelta(*ref_arp, *arp); });
        }

        if (!is_pivot && pivot_tag) {
          const auto& pivot_arps = arps[*pivot_tag];
          auto pivot_at = [&](const std::string& l) -> std::optional<ArpResult> {
            auto it = pivot_arps.find(l);
            if (it == pivot_arps.end()) return std::nullopt;
            return it->second.at(m);
          };
          const auto pivot_ref = pivot_at(ref);
          const auto pivot_here = pivot_at(label);
          if (is_ref) {
            if (pivot_ref) cells.delta_ri = 0.0;
          } else if (ref_arp && arp && pivot_ref && pivot_here) {
            cells.delta_ri = Guarded(diagnostics, where, [&] {
              return DeltaRi(RelativeImprovement(*ref_arp, *pivot_ref),
                             RelativeImprovement(*arp, *pivot_here));
            });
          }
        }

        const PerTopicScores* a = nullptr;
        const PerTopicScores* b = nullptr;
        if (options.significance == SignificanceMode::kPivot) {
          if (!is_pivot && pivot_tag && scores[*pivot_tag].count(label) != 0) {
            a = &scores[tag][label].at(m);
            b = &scores[*pivot_tag][label].at(m);
          }
        } else if (has_ref) {
          a = &scores[tag][ref].at(m);
          b = &scores[tag][label].at(m);
        }
        if (a != nullptr) {
          try {
            cells.significant = TestSignificance(*a, *b, options.alpha, family).significant;
          } catch (const Error& err) {
            if (err.kind() != ErrorKind::kInvalid) throw;
            Warn(diagnostics, where, std::string("significance not tested: ") + err.what());
          }
        }
        row.cells.emplace(m, cells);
      }
      matrix.rows.push_back(std::move(row));
    }
  }
  matrix.SortRows(order);
  return matrix;
}

CommandOutput RunChange(const ChangeRequest& request) {
  CommandOutput out;
  if (request.options.scenario == Scenario::kDprimeTQ &&
      !request.qrels_overrides.empty()) {
    throw Error(ErrorKind::kUsage,
                "the dtq scenario reuses the reference qrels; per-environment qrels "
                "require --scenario dtq-prime");
  }
  const auto configs = LoadConfig(request.config);
  std::vector<std::string> labels = request.ee_labels;
  if (labels.empty()) {
    for (const EEConfig& c : configs) labels.push_back(c.label);
  }
  std::vector<EvaluationEnvironment> ees;
  for (const std::string& label : labels) {
    EEConfig cfg = FindConfig(configs, label);
    for (const LabeledPath& q : request.qrels_overrides) {
      if (q.ee_label == label) cfg.qrels_path = q.path;
    }
    ees.push_back(LoadEnvironment(cfg, &out.diagnostics));
  }
  for (const LabeledPath& q : request.qrels_overrides) {
    FindConfig(configs, q.ee_label);
  }
  auto load = [&](const std::vector<LabeledPath>& refs) {
    std::vector<RunFile> loaded;
    for (const LabeledPath& r : refs) {
      if (std::find(labels.begin(), labels.end(), r.ee_label) == labels.end()) {
        FindConfig(configs, r.ee_label);
        Warn(&out.diagnostics, r.path.string(),
             "environment " + r.ee_label + " is not compared; run ignored");
        continue;
      }
      loaded.push_back(LoadRun(r.path, r.ee_label, &out.diagnostics));
    }
    return loaded;
  };
  const std::vector<RunFile> runs = load(request.runs);
  const std::vector<RunFile> pivots = load(request.pivot_runs);
  const LongitudinalMatrix matrix =
      BuildChangeMatrix(ees, runs, pivots, request.options, &out.diagnostics);
  out.text = Render(matrix, request.format, request.render);
  return out;
}

CommandOutput RunSimulate(const SimulateRequest& request) {
  CommandOutput out;
  EvaluationEnvironment base;
  base.label = "base";
  base.corpus = LoadManifest(request.manifest);
  base.qrels = LoadQrels(request.qrels, &out.diagnostics);
  if (request.topics) {
    base.topics = LoadTopics(*request.topics);
  } else {
    for (const TopicId& t : base.qrels.Topics()) base.topics.emplace(t, TopicDef{t, {}});
  }
  const auto slices =
      SplitAppendOnly(base, SimulationPlan::EqualDocCount(request.slices));

  std::error_code ec;
  std::filesystem::create_directories(request.out_dir, ec);
  if (ec) {
    throw Error(ErrorKind::kIo, "cannot create '" + request.out_dir.string() +
                                    "': " + ec.message());
  }
  {
    std::ostringstream topics;
    WriteTopics(base.topics, topics);
    WriteFile(request.out_dir / "topics.tsv", topics.str());
  }
  std::vector<EEConfig> configs;
  for (const EvaluationEnvironment& ee : slices) {
    const std::string manifest_name = ee.label + ".manifest.jsonl";
    const std::string qrels_name = ee.label + ".qrels";
    std::ostringstream manifest, qrels;
    WriteManifest(ee.corpus, manifest);
    WriteQrels(ee.qrels, qrels);
    WriteFile(request.out_dir / manifest_name, manifest.str());
    WriteFile(request.out_dir / qrels_name, qrels.str());
    configs.push_back({ee.label, manifest_name, std::filesystem::path("topics.tsv"),
                       qrels_name});
  }
  std::ostringstream config;
  WriteConfig(configs, config);
  WriteFile(request.out_dir / "environments.json", config.str());
  out.text = config.str();
  return out;
}

CommandOutput RunReport(const ReportRequest& request) {
  std::ifstream in(request.input, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open '" + request.input.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  CommandOutput out;
  out.text = Render(ParseMatrixJson(buf.str()), request.format, request.render);
  return out;
}

}  // namespace tempeval
