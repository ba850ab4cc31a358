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

// Exercises the shared library through its C interface only.

#include "tempeval/tempeval.h"

#include <gtest/gtest.h>

#include <cmath>
#include <string>
#include <vector>

#include "fixtures.hpp"

namespace {

using tempeval_test::TempDir;
using tempeval_test::WriteText;

TEST(CApiTest, VersionAndStatusNames) {
  EXPECT_STREQ(tev_version(), "1.0.0");
  EXPECT_STREQ(tev_status_name(TEV_OK), "ok");
  EXPECT_STREQ(tev_status_name(TEV_ERROR_UNDEFINED), "undefined");
  EXPECT_STREQ(tev_status_name(static_cast<tev_status>(42)), "unknown status");
}

TEST(CApiTest, ExitCodes) {
  EXPECT_EQ(tev_exit_code(TEV_OK), 0);
  EXPECT_EQ(tev_exit_code(TEV_ERROR_INTERNAL), 1);
  for (tev_status s : {TEV_ERROR_USAGE, TEV_ERROR_INVALID, TEV_ERROR_PARSE, TEV_ERROR_IO,
                       TEV_ERROR_UNDEFINED}) {
    EXPECT_EQ(tev_exit_code(s), 2) << s;
  }
}

TEST(CApiTest, Rbo) {
  const char* a[] = {"a", "b", "c"};
  const char* b[] = {"c", "b", "a"};
  double v = -1;
  ASSERT_EQ(tev_rbo(a, 3, a, 3, 0.9, 100, 1, &v), TEV_OK);
  EXPECT_EQ(v, 1.0);
  ASSERT_EQ(tev_rbo(a, 3, b, 3, 0.9, 100, 1, &v), TEV_OK);
  EXPECT_GT(v, 0.0);
  EXPECT_LT(v, 1.0);
  const char* dup[] = {"a", "a"};
  EXPECT_EQ(tev_rbo(dup, 2, a, 3, 0.9, 100, 1, &v), TEV_ERROR_INVALID);
  EXPECT_NE(std::string(tev_last_error()), "");
  EXPECT_EQ(tev_rbo(a, 3, b, 3, 1.5, 100, 1, &v), TEV_ERROR_INVALID);
  EXPECT_EQ(tev_rbo(a, 3, b, 3, 0.9, 100, 1, nullptr), TEV_ERROR_USAGE);
  EXPECT_EQ(tev_rbo(nullptr, 2, b, 3, 0.9, 100, 1, &v), TEV_ERROR_USAGE);
  // success clears the previous message
  ASSERT_EQ(tev_rbo(a, 3, b, 3, 0.9, 100, 1, &v), TEV_OK);
  EXPECT_STREQ(tev_last_error(), "");
}

TEST(CApiTest, ChangeScalars) {
  double v = 0;
  ASSERT_EQ(tev_result_delta(0.081, 0.111, &v), TEV_OK);
  EXPECT_NEAR(v, -0.370, 5e-4);
  EXPECT_EQ(tev_result_delta(0.0, 0.1, &v), TEV_ERROR_UNDEFINED);
  EXPECT_NE(std::string(tev_last_error()).find("zero baseline"), std::string::npos);
  ASSERT_EQ(tev_relative_improvement(0.096, 0.081, &v), TEV_OK);
  EXPECT_NEAR(v, 0.1852, 5e-5);
  EXPECT_EQ(tev_relative_improvement(0.1, 0.0, &v), TEV_ERROR_UNDEFINED);
  EXPECT_DOUBLE_EQ(tev_delta_ri(0.1852, 0.1712), 0.1852 - 0.1712);

  const double a[] = {0.1, 0.5, 0.9}, b[] = {0.1, 0.2, 0.5};
  ASSERT_EQ(tev_rmse(a, b, 3, &v), TEV_OK);
  EXPECT_NEAR(v, std::sqrt((0.09 + 0.16) / 3.0), 1e-12);
  EXPECT_NE(tev_rmse(a, b, 0, &v), TEV_OK);
  EXPECT_EQ(tev_rmse(nullptr, b, 3, &v), TEV_ERROR_USAGE);
}

TEST(CApiTest, Significance) {
  const double d[] = {0.3, 0.1, -0.1, 0.2, 0.0}, z[] = {0, 0, 0, 0, 0};
  double t = 0, p = 0;
  ASSERT_EQ(tev_paired_t_test(d, z, 5, &t, &p), TEV_OK);
  EXPECT_NEAR(t, std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(p, 0.230, 0.005);
  EXPECT_EQ(tev_paired_t_test(d, z, 1, &t, &p), TEV_ERROR_INVALID);
  EXPECT_EQ(tev_paired_t_test(d, z, 5, nullptr, &p), TEV_ERROR_USAGE);
  double adj = 0;
  ASSERT_EQ(tev_bonferroni(0.05, 8, &adj), TEV_OK);
  EXPECT_EQ(adj, 0.00625);
  EXPECT_EQ(tev_bonferroni(0.05, 0, &adj), TEV_ERROR_INVALID);
}

TEST(CApiTest, NullRequestsAndResults) {
  tev_result* r = nullptr;
  EXPECT_EQ(tev_diff(nullptr, &r), TEV_ERROR_USAGE);
  EXPECT_EQ(tev_evaluate(nullptr, &r), TEV_ERROR_USAGE);
  EXPECT_EQ(tev_change(nullptr, &r), TEV_ERROR_USAGE);
  EXPECT_EQ(tev_simulate(nullptr, &r), TEV_ERROR_USAGE);
  EXPECT_EQ(tev_report(nullptr, &r), TEV_ERROR_USAGE);
  EXPECT_EQ(r, nullptr);
  size_t len = 7;
  EXPECT_STREQ(tev_result_output(nullptr, &len), "");
  EXPECT_EQ(len, 0u);
  EXPECT_EQ(tev_result_warning_count(nullptr), 0u);
  EXPECT_EQ(tev_result_warning(nullptr, 0), nullptr);
  tev_result_free(nullptr);
  tev_diff_request_init(nullptr);

  tev_diff_request diff;
  tev_diff_request_init(&diff);
  EXPECT_EQ(diff.format, TEV_FORMAT_CSV);
  EXPECT_EQ(diff.precision, 4);
  EXPECT_EQ(tev_diff(&diff, &r), TEV_ERROR_USAGE);  // no config path
}

class CApiCommandTest : public ::testing::Test {
 protected:
  void SetUp() override {
    WriteText(dir_ / "t0.jsonl",
              "{\"doc_id\":\"a\",\"length\":3}\n{\"doc_id\":\"b\",\"length\":4}\n");
    WriteText(dir_ / "t1.jsonl",
              "{\"doc_id\":\"a\",\"length\":3}\n{\"doc_id\":\"b\",\"length\":4}\n"
              "{\"doc_id\":\"c\",\"length\":5}\n");
    WriteText(dir_ / "q", "1 0 a 1\n1 0 b 0\n1 0 c 1\n2 0 b 1\n");
    WriteText(dir_ / "env.json",
              R"({"environments":[{"label":"t0","manifest_path":"t0.jsonl","qrels_path":"q"},)"
              R"({"label":"t1","manifest_path":"t1.jsonl","qrels_path":"q"}]})");
    WriteText(dir_ / "run", "1 Q0 a 1 2.0 sys\n1 Q0 b 2 1.0 sys\n2 Q0 b 1 1.0 sys\n");
  }
  std::string Path(const char* name) const { return (dir_ / name).string(); }

  TempDir dir_{"capi"};
};

TEST_F(CApiCommandTest, DiffLifecycle) {
  const std::string config = Path("env.json");
  tev_diff_request req;
  tev_diff_request_init(&req);
  req.config_path = config.c_str();
  req.from_label = "t0";
  req.to_label = "t1";
  tev_result* r = nullptr;
  ASSERT_EQ(tev_diff(&req, &r), TEV_OK) << tev_last_error();
  ASSERT_NE(r, nullptr);
  size_t len = 0;
  const std::string text = tev_result_output(r, &len);
  EXPECT_EQ(len, text.size());
  EXPECT_NE(text.find("documents,t0,t1,2,3,"), std::string::npos) << text;
  // c is judged but absent from t0's corpus
  EXPECT_GE(tev_result_warning_count(r), 1u);
  EXPECT_NE(tev_result_warning(r, 0), nullptr);
  EXPECT_EQ(tev_result_warning(r, tev_result_warning_count(r)), nullptr);
  tev_result_free(r);

  req.to_label = "t7";
  r = nullptr;
  EXPECT_EQ(tev_diff(&req, &r), TEV_ERROR_USAGE);
  EXPECT_EQ(r, nullptr);
  EXPECT_NE(std::string(tev_last_error()).find("t7"), std::string::npos);

  req.config_path = "/nonexistent/env.json";
  req.to_label = "t1";
  EXPECT_EQ(tev_diff(&req, &r), TEV_ERROR_IO);
}

TEST_F(CApiCommandTest, EvaluateAndChange) {
  const std::string config = Path("env.json"), run = Path("run");
  const char* runs[] = {run.c_str()};
  tev_evaluate_request ev;
  tev_evaluate_request_init(&ev);
  ev.config_path = config.c_str();
  ev.run_paths = runs;
  ev.run_count = 1;
  ev.ee_label = "t0";
  ev.measures = "P@1";
  tev_result* r = nullptr;
  ASSERT_EQ(tev_evaluate(&ev, &r), TEV_OK) << tev_last_error();
  EXPECT_NE(std::string(tev_result_output(r, nullptr)).find("sys,t0,P@1,all,1.0000,2"),
            std::string::npos)
      << tev_result_output(r, nullptr);
  tev_result_free(r);
  ev.measures = "P@0";
  EXPECT_EQ(tev_evaluate(&ev, &r), TEV_ERROR_USAGE);

  const tev_labeled_path change_runs[] = {{"t0", run.c_str()}, {"t1", run.c_str()}};
  tev_change_request ch;
  tev_change_request_init(&ch);
  EXPECT_EQ(ch.rbo_phi, 0.9);
  EXPECT_EQ(ch.rbo_depth, 100);
  EXPECT_EQ(ch.rbo_normalize, 1);
  EXPECT_EQ(ch.alpha, 0.05);
  ch.config_path = config.c_str();
  ch.runs = change_runs;
  ch.run_count = 2;
  ch.measures = "P@1";
  ch.format = TEV_FORMAT_JSON;
  ASSERT_EQ(tev_change(&ch, &r), TEV_OK) << tev_last_error();
  EXPECT_NE(std::string(tev_result_output(r, nullptr)).find("\"rows\""), std::string::npos);
  tev_result_free(r);
  ch.rbo_phi = 1.0;
  EXPECT_EQ(tev_change(&ch, &r), TEV_ERROR_USAGE);
  ch.rbo_phi = 0.9;
  ch.scenario = static_cast<tev_scenario>(9);
  EXPECT_EQ(tev_change(&ch, &r), TEV_ERROR_USAGE);
}

TEST_F(CApiCommandTest, SimulateNeedsDates) {
  const std::string manifest = Path("t1.jsonl"), qrels = Path("q"), out = Path("sim");
  tev_simulate_request req;
  tev_simulate_request_init(&req);
  EXPECT_EQ(req.slices, 3);
  req.manifest_path = manifest.c_str();
  req.qrels_path = qrels.c_str();
  req.out_dir = out.c_str();
  tev_result* r = nullptr;
  EXPECT_EQ(tev_simulate(&req, &r), TEV_ERROR_INVALID);
  EXPECT_NE(std::string(tev_last_error()).find("timestamp"), std::string::npos)
      << tev_last_error();
  req.slices = 1;
  EXPECT_EQ(tev_simulate(&req, &r), TEV_ERROR_USAGE);
}

}  // namespace
