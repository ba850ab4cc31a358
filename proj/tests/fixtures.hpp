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

#ifndef TEMPEVAL_TESTS_FIXTURES_HPP_
#define TEMPEVAL_TESTS_FIXTURES_HPP_

// On-disk fixtures: scratch directories and a synthetic dated collection with
// deterministic runs.

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tempeval/ingest.hpp"
#include "tempeval/model.hpp"

namespace tempeval_test {

namespace fs = std::filesystem;

class TempDir {
 public:
  explicit TempDir(const std::string& name) {
    static std::atomic<int> counter{0};
    path_ = fs::temp_directory_path() /
            ("tempeval-" + name + "-" + std::to_string(::getpid()) + "-" +
             std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const { return path_; }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

inline void WriteText(const fs::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

inline std::string ReadText(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline std::uint64_t Fnv1a(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// Deterministic value in [0,1) keyed by a string.
inline double HashUnit(std::string_view key) {
  std::uint64_t h = Fnv1a(key);
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdull;
  h ^= h >> 33;
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

inline std::string PadNumber(int value, int width) {
  std::string s = std::to_string(value);
  return std::string(width > static_cast<int>(s.size()) ? width - s.size() : 0, '0') + s;
}

inline std::string DateAfter(int days) {
  using namespace std::chrono;
  const year_month_day ymd{sys_days{2019y / January / 1} + std::chrono::days{days}};
  return std::to_string(static_cast<int>(ymd.year())) + "-" +
         PadNumber(static_cast<int>(static_cast<unsigned>(ymd.month())), 2) + "-" +
         PadNumber(static_cast<int>(static_cast<unsigned>(ymd.day())), 2);
}

// A dated corpus d0000.. with one distinct date per document, topics q01..,
// and sparse graded judgments.
struct SyntheticCollection {
  int docs = 1000;
  int topics = 20;
  double judged_rate = 0.05;

  std::string DocName(int i) const { return "d" + PadNumber(i, 4); }
  std::string TopicName(int i) const { return "q" + PadNumber(i + 1, 2); }

  // -1 when unjudged.
  int Grade(const std::string& topic, const std::string& doc) const {
    if (HashUnit("qrel|" + topic + "|" + doc) >= judged_rate) return -1;
    return static_cast<int>(HashUnit("grade|" + topic + "|" + doc) * 3.0);
  }

  std::string Manifest() const {
    std::string out;
    for (int i = 0; i < docs; ++i) {
      const int length = 200 + static_cast<int>(HashUnit("len|" + DocName(i)) * 800);
      out += "{\"doc_id\":\"" + DocName(i) + "\",\"length\":" + std::to_string(length) +
             ",\"timestamp\":\"" + DateAfter(i) + "\"}\n";
    }
    return out;
  }

  std::string QrelsText() const {
    std::string out;
    for (int t = 0; t < topics; ++t) {
      for (int i = 0; i < docs; ++i) {
        const int g = Grade(TopicName(t), DocName(i));
        if (g >= 0) out += TopicName(t) + " 0 " + DocName(i) + " " + std::to_string(g) + "\n";
      }
    }
    return out;
  }

  std::string TopicsText() const {
    std::string out;
    for (int t = 0; t < topics; ++t) out += TopicName(t) + "\tsynthetic topic " + TopicName(t) + "\n";
    return out;
  }

  // Fixed score of a document for a system; relevant documents get a boost
  // so systems differ in effectiveness.
  double Score(const std::string& system, double boost, const std::string& topic,
               const std::string& doc) const {
    const int g = Grade(topic, doc);
    return HashUnit(system + "|" + topic + "|" + doc) + boost * std::max(g, 0);
  }

  // Ranks the top `depth` documents of `corpus` for every topic.
  std::string RunText(const tempeval::CorpusSnapshot& corpus, const std::string& system,
                      double boost, int depth = 100) const {
    std::string out;
    char buf[64];
    for (int t = 0; t < topics; ++t) {
      const std::string topic = TopicName(t);
      std::vector<std::pair<double, std::string>> scored;
      for (const auto& [id, meta] : corpus.docs()) {
        scored.emplace_back(Score(system, boost, topic, id.str()), id.str());
      }
      std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
        return a.first != b.first ? a.first > b.first : a.second < b.second;
      });
      if (static_cast<int>(scored.size()) > depth) scored.resize(depth);
      for (std::size_t r = 0; r < scored.size(); ++r) {
        std::snprintf(buf, sizeof buf, "%.17g", scored[r].first);
        out += topic + " Q0 " + scored[r].second + " " + std::to_string(r + 1) + " " + buf +
               " " + system + "\n";
      }
    }
    return out;
  }

  void WriteBase(const fs::path& dir) const {
    WriteText(dir / "corpus.jsonl", Manifest());
    WriteText(dir / "corpus.qrels", QrelsText());
    WriteText(dir / "topics.tsv", TopicsText());
  }
};

}  // namespace tempeval_test

#endif  // TEMPEVAL_TESTS_FIXTURES_HPP_
