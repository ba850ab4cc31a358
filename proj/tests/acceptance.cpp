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

// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "tempeval/change_measures.hpp"
#include "tempeval/crud_diff.hpp"
#include "tempeval/effectiveness.hpp"
#include "tempeval/ingest.hpp"
#include "tempeval/pipeline.hpp"
#include "tempeval/significance.hpp"

namespace {

namespace oracle = tempeval_test::oracle;
using namespace tempeval;
using tempeval_test::Gen;
using tempeval_test::MakeQrels;
using tempeval_test::MakeRanking;

// Collects failure messages for one criterion.
class Checker {
 public:
  void Near(const std::string& what, double got, double want, double tol) {
    if (!(std::fabs(got - want) <= tol)) {
      Fail(what + ": got " + Num(got) + ", want " + Num(want) + " +- " + Num(tol));
    }
  }
  void True(const std::string& what, bool ok) {
    if (!ok) Fail(what);
  }
  void Fail(const std::string& msg) {
    if (failures_.size() < 5) failures_.push_back(msg);
    ++count_;
  }
  bool ok() const { return count_ == 0; }
  const std::vector<std::string>& failures() const { return failures_; }
  int count() const { return count_; }

  static std::string Num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
  }

 private:
  std::vector<std::string> failures_;
  int count_ = 0;
};

ArpResult Arp(double mean, const std::string& system = "s", const std::string& ee = "t") {
  return ArpResult{MeasureSpec::PrecisionAt(10), system, ee, mean, 1};
}

void Ac1(Checker& c) {
  const double t0 = 0.081, t1 = 0.111, t2 = 0.123;
  const double d1 = ResultDelta(Arp(t0), Arp(t1)), d2 = ResultDelta(Arp(t0), Arp(t2));
  c.Near("BM25 P@10 ReDelta t1", d1, -0.370, 5e-4);
  c.Near("BM25 P@10 ReDelta t2", d2, -0.519, 5e-4);
  c.Near("reference ReDelta t1", d1, -0.377, 0.02);
  c.Near("reference ReDelta t2", d2, -0.522, 0.02);
}

void Ac2(Checker& c) {
  const double ri0 = RelativeImprovement(Arp(0.096, "colbert"), Arp(0.081, "bm25"));
  const double ri1 = RelativeImprovement(Arp(0.130, "colbert"), Arp(0.111, "bm25"));
  const double colbert = DeltaRi(ri0, ri1);
  c.Near("ColBERT P@10 dRI t1", colbert, 0.014, 5e-4);
  c.Near("reference ColBERT dRI t1", colbert, 0.018, 0.01);
  const double mono0 = RelativeImprovement(Arp(0.291, "monot5"), Arp(0.280, "bm25"));
  const double mono2 = RelativeImprovement(Arp(0.347, "monot5"), Arp(0.334, "bm25"));
  c.Near("reference MonoT5 nDCG dRI t2", DeltaRi(mono0, mono2), 0.000, 0.01);
}

void Ac3(Checker& c) {
  // 565,737 -> 1,085,094 scaled by 1000 with the growth ratio kept.
  const int before = 566, created = 520;
  std::map<DocId, DocMeta> a, b;
  for (int i = 0; i < before + created; ++i) {
    const DocId id("doc" + std::to_string(i));
    if (i < before) a.emplace(id, DocMeta(id, 100 + i % 7));
    b.emplace(id, DocMeta(id, 100 + i % 7));
  }
  const ComponentDiff d = DiffDocuments(CorpusSnapshot(a), CorpusSnapshot(b));
  c.True("CREATE equals total delta",
         d.created().size() == d.total_to() - d.total_from() && d.created().size() == 520);
  c.True("no UPDATE", d.updated().empty());
  c.True("no DELETE", d.deleted().empty());
  c.True("relative delta defined", d.relative_delta().has_value());
  if (d.relative_delta()) c.Near("relative delta", *d.relative_delta(), 0.918, 0.001);
}

void Ac4(Checker& c) {
  Gen gen(4);
  const double phis[] = {0.5, 0.8, 0.9};
  for (int trial = 0; trial < 1000; ++trial) {
    const double phi = phis[trial % 3];
    const auto a = gen.Docs(30, gen.Int(0, 20));
    const auto b = gen.Docs(30, gen.Int(0, 20));
    const bool normalize = gen.Coin(0.5);
    const RboConfig cfg(phi, 100, normalize);
    c.Near("rbo vs brute force (trial " + std::to_string(trial) + ")", Rbo(a, b, cfg),
           oracle::Rbo(a, b, phi, 100, normalize), 1e-12);
    const RboConfig norm(phi, 100, true);
    if (!a.empty() && Rbo(a, a, norm) != 1.0) c.Fail("identity pair below 1.0");
    std::vector<std::string> other;
    for (const auto& d : a) other.push_back("z" + d);
    if (!a.empty() && Rbo(a, other, norm) != 0.0) c.Fail("disjoint pair above 0.0");
  }
}

void Ac5(Checker& c) {
  Gen gen(5);
  for (int trial = 0; trial < 500; ++trial) {
    const auto ranking = gen.Docs(60, gen.Int(0, 50));
    std::map<std::string, int> judged;
    for (const auto& d : gen.Docs(60, gen.Int(0, 10))) judged[d] = gen.Int(0, 3);
    const Ranking r = MakeRanking("1", ranking);
    const Qrels q = MakeQrels({{"1", judged}});
    c.Near("P@10", PrecisionAtK(r, q, 10), oracle::PrecisionAt(ranking, judged, 10), 1e-9);
    c.Near("nDCG", Ndcg(r, q), oracle::Ndcg(ranking, judged, std::nullopt), 1e-9);
    c.Near("bpref", Bpref(r, q), oracle::Bpref(ranking, judged), 1e-9);
    std::vector<std::string> injected = ranking;
    for (int i = gen.Int(1, 10); i > 0; --i) {
      injected.insert(injected.begin() + gen.Int(0, static_cast<int>(injected.size())),
                      "unjudged" + std::to_string(i));
    }
    if (Bpref(MakeRanking("1", injected), q) != Bpref(r, q)) {
      c.Fail("bpref changed under unjudged injection");
    }
  }
}

PerTopicScores Scores(const std::vector<double>& v, const std::string& ee) {
  std::map<TopicId, double> m;
  for (std::size_t i = 0; i < v.size(); ++i) m.emplace(TopicId("q" + std::to_string(i)), v[i]);
  return PerTopicScores(MeasureSpec::Bpref(), "s", ee, std::move(m));
}

void Ac6(Checker& c) {
  Gen gen(6);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> a(gen.Int(1, 30)), b(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      a[i] = gen.Unit();
      b[i] = gen.Unit();
    }
    if (Rmse(Scores(a, "t0"), Scores(a, "t1")) != 0.0) c.Fail("rmse(a,a) != 0");
    if (Rmse(Scores(a, "t0"), Scores(b, "t1")) != Rmse(Scores(b, "t0"), Scores(a, "t1"))) {
      c.Fail("rmse not symmetric");
    }
  }
  c.Near("hand example", Rmse(Scores({1.0, 0.5}, "t0"), Scores({0.5, 0.5}, "t1")), 0.35355,
         1e-5);
  c.Near("hand example exact", Rmse(Scores({1.0, 0.5}, "t0"), Scores({0.5, 0.5}, "t1")),
         std::sqrt(0.125), 1e-9);
}

void Ac7(Checker& c) {
  const std::vector<double> diffs = {0.3, 0.1, -0.1, 0.2, 0.0}, zeros(5, 0.0);
  const PairedTTest r = PairedTTestValues(std::span<const double>(diffs),
                                          std::span<const double>(zeros));
  c.Near("t", r.t_statistic, 1.4142, 1e-3);
  c.Near("p", r.p_value, 0.230, 0.005);
  c.Near("p vs quadrature CDF", r.p_value, oracle::TwoSidedP(r.t_statistic, 4), 1e-9);
  c.True("df 4", r.n == 5);
  c.True("Bonferroni(0.05, 8) == 0.00625", Bonferroni(0.05, 8) == 0.00625);
}

// Simulated 1000-doc collection with a pivot (bm25) and an experimental run.
struct EndToEnd {
  tempeval_test::TempDir dir{"acceptance"};
  tempeval_test::SyntheticCollection coll;
  std::vector<std::string> labels = {"t0", "t1", "t2"};

  EndToEnd() {
    coll.WriteBase(dir.path());
    SimulateRequest sim;
    sim.manifest = dir / "corpus.jsonl";
    sim.qrels = dir / "corpus.qrels";
    sim.topics = dir / "topics.tsv";
    sim.slices = 3;
    sim.out_dir = dir / "sim";
    RunSimulate(sim);
    for (const auto& l : labels) {
      const auto corpus = LoadManifest(dir / "sim" / (l + ".manifest.jsonl"));
      tempeval_test::WriteText(dir / ("bm25." + l), coll.RunText(corpus, "bm25", 0.3));
      tempeval_test::WriteText(dir / ("neural." + l), coll.RunText(corpus, "neural", 0.6));
    }
  }

  ChangeRequest Change(Scenario s, Format f = Format::kCsv) const {
    ChangeRequest req;
    req.config = dir / "sim" / "environments.json";
    for (const auto& l : labels) {
      req.runs.push_back({l, dir / ("neural." + l)});
      req.pivot_runs.push_back({l, dir / ("bm25." + l)});
    }
    req.options.scenario = s;
    req.options.measures = MeasureSpec::ParseList("P@10,bpref,nDCG");
    req.options.collection_label = "synthetic";
    req.format = f;
    return req;
  }
};

// FNV-1a of the dtq and dtq-prime CSV outputs joined by a newline.
constexpr std::uint64_t kPinnedChecksum = 0x47741cb588bbec97ull;

void Ac8(Checker& c) {
  std::string first;
  for (int pass = 0; pass < 2; ++pass) {
    EndToEnd e;
    std::string csv;
    for (Scenario s : {Scenario::kDprimeTQ, Scenario::kDprimeTQprime}) {
      csv += RunChange(e.Change(s)).text + "\n";
      const LongitudinalMatrix m = ParseMatrixJson(RunChange(e.Change(s, Format::kJson)).text);
      if (pass > 0) continue;
      c.True("six rows", m.rows.size() == 6);
      for (const ChangeReport& row : m.rows) {
        if (row.ee_label != "t0") continue;
        const std::string where = row.system_tag + " " + std::string(ScenarioName(s));
        if (s == Scenario::kDprimeTQ) {
          c.True(where + " RBO 1.0", row.rbo_mean == 1.0);
        }
        for (const auto& [spec, cell] : row.cells) {
          if (s == Scenario::kDprimeTQ) c.True(where + " RMSE 0.0", cell.rmse == 0.0);
          c.True(where + " ReDelta 0.0", cell.re_delta == 0.0);
          if (!row.pivot) c.True(where + " dRI 0.0", cell.delta_ri == 0.0);
        }
      }
    }
    if (pass == 0) {
      first = csv;
    } else {
      c.True("byte-identical CSV across runs", csv == first);
    }
  }
  const std::uint64_t sum = tempeval_test::Fnv1a(first);
  if (sum != kPinnedChecksum) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "checksum %016llx differs from pinned value",
                  static_cast<unsigned long long>(sum));
    c.Fail(buf);
  }
}

void Ac9(Checker& c) {
  EndToEnd e;
  // Precondition: each later slice brings a new document into some topic's top-100.
  for (std::size_t i = 1; i < e.labels.size(); ++i) {
    const auto prev = LoadManifest(e.dir / "sim" / (e.labels[i - 1] + ".manifest.jsonl"));
    for (const char* system : {"bm25", "neural"}) {
      const RunFile run = LoadRun(e.dir / (std::string(system) + "." + e.labels[i]), e.labels[i]);
      bool entered = false;
      for (const auto& [topic, ranking] : run.rankings()) {
        for (const auto& entry : ranking.entries()) entered |= !prev.Contains(entry.doc);
      }
      c.True(std::string(system) + " " + e.labels[i] + " adds a top-100 document", entered);
    }
  }
  const LongitudinalMatrix m =
      ParseMatrixJson(RunChange(e.Change(Scenario::kDprimeTQ, Format::kJson)).text);
  std::map<std::string, std::vector<double>> by_system;
  for (const ChangeReport& row : m.rows) {
    if (!row.rbo_mean) {
      c.Fail("missing RBO for " + row.system_tag + " " + row.ee_label);
      continue;
    }
    by_system[row.system_tag].push_back(*row.rbo_mean);
  }
  for (const auto& [system, series] : by_system) {
    std::string trace;
    for (double v : series) trace += " " + Checker::Num(v);
    c.True(system + " has three points", series.size() == 3);
    for (std::size_t i = 1; i < series.size(); ++i) {
      c.True(system + " mean RBO non-increasing:" + trace, series[i] <= series[i - 1]);
    }
  }
}

struct Criterion {
  const char* name;
  const char* title;
  double limit_seconds;
  std::function<void(Checker&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"AC1", "ReDelta re-derivation", 1, Ac1},
      {"AC2", "dRI re-derivation", 1, Ac2},
      {"AC3", "CRUD append-only growth", 5, Ac3},
      {"AC4", "RBO brute-force oracle", 10, Ac4},
      {"AC5", "effectiveness oracle", 30, Ac5},
      {"AC6", "RMSE properties", 30, Ac6},
      {"AC7", "significance oracle", 30, Ac7},
      {"AC8", "end-to-end determinism", 30, Ac8},
      {"AC9", "monotone change", 30, Ac9},
  };
  int failed = 0;
  for (const Criterion& cr : criteria) {
    Checker c;
    const auto start = std::chrono::steady_clock::now();
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      c.Fail(std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > cr.limit_seconds) c.Fail("runtime above " + Checker::Num(cr.limit_seconds) + " s");
    std::printf("%s %s: %s (%.3f s)\n", c.ok() ? "PASS" : "FAIL", cr.name, cr.title, secs);
    for (const auto& f : c.failures()) std::printf("    %s\n", f.c_str());
    if (c.count() > static_cast<int>(c.failures().size())) {
      std::printf("    ... %d failures in total\n", c.count());
    }
    failed += c.ok() ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
