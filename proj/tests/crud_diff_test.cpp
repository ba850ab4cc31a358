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

#include "tempeval/crud_diff.hpp"

#include <gtest/gtest.h>

#include "generators.hpp"
#include "test_util.hpp"

namespace tempeval {
namespace {

using tempeval_test::Doc;
using tempeval_test::Gen;
using tempeval_test::KindOf;
using tempeval_test::MakeQrels;
using tempeval_test::Topic;
using Ids = std::set<std::string>;

CorpusSnapshot Corpus(const std::map<std::string, std::int64_t>& lengths,
                      const std::map<std::string, std::string>& hashes = {}) {
  std::map<DocId, DocMeta> docs;
  for (const auto& [id, len] : lengths) {
    std::optional<std::string> h;
    if (auto it = hashes.find(id); it != hashes.end()) h = it->second;
    docs.emplace(Doc(id), DocMeta(Doc(id), len, std::nullopt, h));
  }
  return CorpusSnapshot(std::move(docs));
}

CorpusSnapshot Numbered(int from, int to) {
  std::map<std::string, std::int64_t> docs;
  for (int i = from; i < to; ++i) docs["d" + std::to_string(i)] = 100;
  return Corpus(docs);
}

TopicSet Topics(const std::map<std::string, std::optional<std::string>>& defs) {
  TopicSet t;
  for (const auto& [id, text] : defs) t.emplace(Topic(id), TopicDef{Topic(id), text});
  return t;
}

TEST(ComponentDiffTest, InvariantsEnforced) {
  EXPECT_NO_THROW(ComponentDiff({"a"}, {}, {"b"}, 2, 2));
  EXPECT_EQ(KindOf([] { ComponentDiff({"a"}, {}, {"a"}, 1, 1); }), ErrorKind::kInvalid);
  EXPECT_EQ(KindOf([] { ComponentDiff({"a"}, {}, {}, 1, 1); }), ErrorKind::kInvalid);
  EXPECT_EQ(ComponentDiff({"a"}, {}, {}, 0, 1).relative_delta(), std::nullopt);
  EXPECT_EQ(ComponentDiff({}, {}, {"a", "b"}, 4, 2).relative_delta(), -0.5);
}

TEST(DiffDocumentsTest, Examples) {
  auto same = Numbered(0, 10);
  auto id = DiffDocuments(same, same);
  EXPECT_TRUE(id.created().empty() && id.updated().empty() && id.deleted().empty());
  EXPECT_EQ(id.relative_delta(), 0.0);

  auto d = DiffDocuments(Corpus({{"d1", 10}}), Corpus({{"d1", 12}, {"d2", 5}}));
  EXPECT_EQ(d.created(), Ids{"d2"});
  EXPECT_EQ(d.updated(), Ids{"d1"});
  EXPECT_TRUE(d.deleted().empty());
  EXPECT_EQ(d.total_from(), 1u);
  EXPECT_EQ(d.total_to(), 2u);
}

TEST(DiffDocumentsTest, TripClickGrowthAtFullScale) {
  auto a = Numbered(0, 565737);
  auto b = Numbered(0, 565737 + 519357);
  auto d = DiffDocuments(a, b);
  EXPECT_EQ(d.created().size(), 519357u);
  EXPECT_TRUE(d.updated().empty());
  EXPECT_TRUE(d.deleted().empty());
  EXPECT_EQ(d.total_to(), 1085094u);
  EXPECT_NEAR(*d.relative_delta(), 0.918, 5e-4);
}

TEST(DiffDocumentsTest, ContentHashTakesPrecedenceWhenBothSidesHaveIt) {
  auto a = Corpus({{"x", 5}, {"y", 5}, {"z", 5}}, {{"x", "h1"}, {"y", "h1"}, {"z", "h1"}});
  auto b = Corpus({{"x", 5}, {"y", 6}, {"z", 5}}, {{"x", "h2"}, {"y", "h1"}});
  auto d = DiffDocuments(a, b);
  // x: same length, new hash; y: new length, same hash; z: hash on one side.
  EXPECT_EQ(d.updated(), Ids{"x"});
}

TEST(DiffTopicsTest, Examples) {
  std::map<std::string, std::optional<std::string>> thirty, thirty_five;
  for (int i = 1; i <= 35; ++i) {
    if (i <= 30) thirty[std::to_string(i)] = "q";
    thirty_five[std::to_string(i)] = "q";
  }
  auto growth = DiffTopics(Topics(thirty), Topics(thirty_five));
  EXPECT_EQ(growth.created().size(), 5u);
  EXPECT_NEAR(*growth.relative_delta(), 0.17, 5e-3);

  auto same = DiffTopics(Topics(thirty), Topics(thirty));
  EXPECT_TRUE(same.created().empty() && same.updated().empty() && same.deleted().empty());

  auto upd = DiffTopics(Topics({{"7", "rain"}}), Topics({{"7", "acid rain"}}));
  EXPECT_EQ(upd.updated(), Ids{"7"});
  // Text missing on one side is not an update.
  EXPECT_TRUE(DiffTopics(Topics({{"7", "rain"}}), Topics({{"7", std::nullopt}})).updated().empty());
}

TEST(DiffQrelsTest, Examples) {
  std::map<std::string, std::map<std::string, int>> small, large;
  for (int i = 0; i < 37710; ++i) {
    const std::string t = std::to_string(i % 100), d = "d" + std::to_string(i);
    if (i < 14334) small[t][d] = 1;
    large[t][d] = 1;
  }
  auto growth = DiffQrels(MakeQrels(small), MakeQrels(large));
  EXPECT_EQ(growth.created().size(), 37710u - 14334u);
  EXPECT_NEAR(*growth.relative_delta(), 1.63, 5e-3);

  auto flip = DiffQrels(MakeQrels({{"1", {{"d7", 1}, {"d8", 0}}}}),
                        MakeQrels({{"1", {{"d7", 0}, {"d8", 0}}}}));
  EXPECT_EQ(flip.updated(), Ids{"1 d7"});
  EXPECT_EQ(flip.total_from(), flip.total_to());

  auto gone = DiffQrels(MakeQrels({{"1", {{"a", 1}}}, {"2", {{"b", 0}}}}), Qrels());
  EXPECT_EQ(gone.deleted(), (Ids{"1 a", "2 b"}));
  EXPECT_EQ(gone.relative_delta(), -1.0);
}

EvaluationEnvironment Env(const std::string& label, CorpusSnapshot corpus) {
  EvaluationEnvironment ee;
  ee.label = label;
  ee.corpus = std::move(corpus);
  ee.topics = Topics({{"1", "one"}});
  ee.qrels = MakeQrels({{"1", {{"d1", 1}}}});
  return ee;
}

TEST(SummarizeTest, Examples) {
  auto t0 = Env("t0", Numbered(0, 10));
  auto same = Summarize(t0, t0);
  EXPECT_EQ(same.from_label, "t0");
  EXPECT_EQ(same.to_label, "t0");
  EXPECT_EQ(same.documents.relative_delta(), 0.0);
  EXPECT_EQ(same.topics.relative_delta(), 0.0);
  EXPECT_EQ(same.qrels.relative_delta(), 0.0);

  auto grown = Summarize(t0, Env("t1", Numbered(0, 15)));
  EXPECT_TRUE(grown.documents.deleted().empty());
  auto shrunk = Summarize(t0, Env("t2", Numbered(0, 6)));
  EXPECT_LT(*shrunk.documents.relative_delta(), 0.0);
}

CorpusSnapshot RandomCorpus(Gen& gen) {
  std::map<std::string, std::int64_t> docs;
  for (int i = 0; i < 30; ++i) {
    if (gen.Coin(0.6)) docs["d" + std::to_string(i)] = gen.Int(0, 3);
  }
  return Corpus(docs);
}

TEST(CrudPropertyTest, SwappingSidesSwapsCreatedAndDeleted) {
  Gen gen(31);
  for (int trial = 0; trial < 300; ++trial) {
    auto a = RandomCorpus(gen), b = RandomCorpus(gen);
    auto ab = DiffDocuments(a, b), ba = DiffDocuments(b, a);
    EXPECT_EQ(ab.created(), ba.deleted());
    EXPECT_EQ(ab.deleted(), ba.created());
    EXPECT_EQ(ab.updated(), ba.updated());
    EXPECT_EQ(ab.total_to(), ab.total_from() + ab.created().size() - ab.deleted().size());
  }
}

TEST(CrudPropertyTest, NetChangeTelescopesAlongChains) {
  Gen gen(37);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<CorpusSnapshot> chain;
    const int n = gen.Int(2, 6);
    for (int i = 0; i < n; ++i) chain.push_back(RandomCorpus(gen));
    long long net = 0;
    for (int i = 0; i + 1 < n; ++i) {
      auto d = DiffDocuments(chain[i], chain[i + 1]);
      net += static_cast<long long>(d.created().size()) - static_cast<long long>(d.deleted().size());
    }
    auto direct = DiffDocuments(chain.front(), chain.back());
    EXPECT_EQ(direct.total_to(), chain.back().size());
    EXPECT_EQ(net, static_cast<long long>(direct.created().size()) -
                       static_cast<long long>(direct.deleted().size()));
  }
}

}  // namespace
}  // namespace tempeval
