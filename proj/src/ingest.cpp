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

#include "tempeval/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace tempeval {
namespace {

using ordered_json = nlohmann::ordered_json;

std::vector<std::string_view> SplitWhitespace(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

bool IsBlank(std::string_view line) {
  return std::all_of(line.begin(), line.end(), [](char c) {
    return std::isspace(static_cast<unsigned char>(c));
  });
}

template <typename Int>
std::optional<Int> ParseInt(std::string_view s) {
  Int value{};
  const char* begin = s.data();
  if (!s.empty() && s.front() == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    return std::nullopt;
  }
  return value;
}

std::optional<double> ParseReal(std::string_view s) {
  double value = 0.0;
  const char* begin = s.data();
  if (!s.empty() && s.front() == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() ||
      !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

[[noreturn]] void ParseFail(std::size_t line_no, const std::string& what) {
  throw Error(ErrorKind::kParse, "line " + std::to_string(line_no) + ": " + what);
}

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string FormatScore(double score) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), score);
  return std::string(buf, ptr);
}

std::ifstream OpenInput(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::kIo, "cannot open '" + path.string() + "'");
  }
  return in;
}

// Re-throws parse/validation errors with the file path as context.
template <typename Fn>
auto WithFileContext(const std::filesystem::path& path, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kIo) throw;
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

std::optional<int> TwoDigits(std::string_view s, std::size_t pos) {
  if (pos + 2 > s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])) ||
      !std::isdigit(static_cast<unsigned char>(s[pos + 1]))) {
    return std::nullopt;
  }
  return (s[pos] - '0') * 10 + (s[pos + 1] - '0');
}

}  // namespace

std::optional<Timestamp> ParseTimestamp(std::string_view text) {
  using namespace std::chrono;
  if (text.size() < 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  auto year = ParseInt<int>(text.substr(0, 4));
  auto month = TwoDigits(text, 5);
  auto day = TwoDigits(text, 8);
  if (!year || !month || !day || !std::isdigit(static_cast<unsigned char>(text[0]))) {
    return std::nullopt;
  }
  year_month_day ymd{std::chrono::year{*year}, std::chrono::month{static_cast<unsigned>(*month)},
                     std::chrono::day{static_cast<unsigned>(*day)}};
  if (!ymd.ok()) return std::nullopt;
  sys_seconds instant = sys_days(ymd);
  std::size_t pos = 10;
  if (pos < text.size()) {
    if (text[pos] != 'T' && text[pos] != 't' && text[pos] != ' ') return std::nullopt;
    auto hh = TwoDigits(text, pos + 1);
    if (!hh || pos + 3 >= text.size() || text[pos + 3] != ':') return std::nullopt;
    auto mm = TwoDigits(text, pos + 4);
    if (!mm) return std::nullopt;
    int ss = 0;
    pos += 6;
    if (pos < text.size() && text[pos] == ':') {
      auto s = TwoDigits(text, pos + 1);
      if (!s) return std::nullopt;
      ss = *s;
      pos += 3;
      if (pos < text.size() && text[pos] == '.') {
        ++pos;
        std::size_t digits = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
          ++pos;
          ++digits;
        }
        if (digits == 0) return std::nullopt;
      }
    }
    if (*hh > 23 || *mm > 59 || ss > 60) return std::nullopt;
    instant += hours(*hh) + minutes(*mm) + seconds(ss);
    if (pos < text.size()) {
      if (text[pos] == 'Z' || text[pos] == 'z') {
        ++pos;
      } else if (text[pos] == '+' || text[pos] == '-') {
        auto oh = TwoDigits(text, pos + 1);
        if (!oh || pos + 3 >= text.size() || text[pos + 3] != ':') return std::nullopt;
        auto om = TwoDigits(text, pos + 4);
        if (!om || *oh > 23 || *om > 59) return std::nullopt;
        auto offset = hours(*oh) + minutes(*om);
        instant += text[pos] == '+' ? -offset : offset;
        pos += 6;
      }
    }
    if (pos != text.size()) return std::nullopt;
  }
  return Timestamp{instant, std::string(text)};
}

RunFile ParseRun(std::istream& in, const std::string& ee_label,
                 Diagnostics* diagnostics) {
  std::map<TopicId, std::vector<std::pair<DocId, double>>> by_topic;
  std::map<std::pair<std::string, std::string>, std::size_t> seen;
  std::string tag;
  bool warned_tag = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (IsBlank(line)) continue;
    auto f = SplitWhitespace(line);
    if (f.size() != 6) {
      ParseFail(line_no, "expected 6 columns (topic Q0 doc rank score tag), got " +
                             std::to_string(f.size()));
    }
    if (Lower(f[1]) != "q0") {
      ParseFail(line_no, "column 2 must be the literal Q0, got '" + std::string(f[1]) + "'");
    }
    if (!ParseInt<long long>(f[3])) {
      ParseFail(line_no, "non-numeric rank '" + std::string(f[3]) + "'");
    }
    auto score = ParseReal(f[4]);
    if (!score) ParseFail(line_no, "non-numeric score '" + std::string(f[4]) + "'");
    std::string topic(f[0]), doc(f[2]);
    auto [it, inserted] = seen.emplace(std::make_pair(topic, doc), line_no);
    if (!inserted) {
      ParseFail(line_no, "duplicate (topic, doc) pair (" + topic + ", " + doc +
                             "), first seen on line " + std::to_string(it->second));
    }
    if (tag.empty()) {
      tag = std::string(f[5]);
    } else if (f[5] != tag && !warned_tag) {
      Warn(diagnostics, "line " + std::to_string(line_no),
           "mixed run tags ('" + tag + "' and '" + std::string(f[5]) +
               "'); using '" + tag + "'");
      warned_tag = true;
    }
    by_topic[TopicId(topic)].emplace_back(DocId(doc), *score);
  }
  if (tag.empty()) {
    throw Error(ErrorKind::kParse, "run file contains no entries");
  }
  std::map<TopicId, Ranking> rankings;
  for (auto& [topic, scored] : by_topic) {
    rankings.emplace(topic, Ranking::Canonical(topic, std::move(scored)));
  }
  return RunFile(tag, ee_label, std::move(rankings));
}

Qrels ParseQrels(std::istream& in, Diagnostics* diagnostics) {
  std::map<TopicId, Qrels::TopicJudgments> judgments;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (IsBlank(line)) continue;
    auto f = SplitWhitespace(line);
    if (f.size() != 4) {
      ParseFail(line_no, "expected 4 columns (topic iteration doc grade), got " +
                             std::to_string(f.size()));
    }
    auto grade = ParseInt<int>(f[3]);
    if (!grade) ParseFail(line_no, "non-integer grade '" + std::string(f[3]) + "'");
    TopicId topic{std::string(f[0])};
    DocId doc{std::string(f[2])};
    int g = *grade;
    if (g < 0) {
      Warn(diagnostics, "line " + std::to_string(line_no),
           "negative grade " + std::to_string(g) + " for (" + topic.str() + ", " +
               doc.str() + ") treated as 0");
      g = 0;
    }
    auto& docs = judgments[topic];
    auto [it, inserted] = docs.emplace(doc, g);
    if (!inserted) {
      if (it->second != g) {
        ParseFail(line_no, "conflicting grades for (" + topic.str() + ", " +
                               doc.str() + "): " + std::to_string(it->second) +
                               " vs " + std::to_string(g));
      }
      Warn(diagnostics, "line " + std::to_string(line_no),
           "duplicate judgment (" + topic.str() + ", " + doc.str() + ") ignored");
    }
  }
  return Qrels(std::move(judgments));
}

CorpusSnapshot ParseManifest(std::istream& in) {
  std::map<DocId, DocMeta> docs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (IsBlank(line)) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      ParseFail(line_no, std::string("invalid JSON: ") + e.what());
    }
    if (!obj.is_object()) ParseFail(line_no, "expected a JSON object");
    auto id_it = obj.find("doc_id");
    if (id_it == obj.end() || !id_it->is_string()) {
      ParseFail(line_no, "missing required string field 'doc_id'");
    }
    auto len_it = obj.find("length");
    if (len_it == obj.end() || !len_it->is_number_integer()) {
      ParseFail(line_no, "missing required integer field 'length'");
    }
    std::int64_t length = len_it->get<std::int64_t>();
    if (length < 0) ParseFail(line_no, "'length' must be >= 0");
    std::optional<Timestamp> ts;
    if (auto t = obj.find("timestamp"); t != obj.end() && !t->is_null()) {
      if (!t->is_string()) ParseFail(line_no, "'timestamp' must be a string");
      ts = ParseTimestamp(t->get<std::string>());
      if (!ts) {
        ParseFail(line_no, "unparsable timestamp '" + t->get<std::string>() + "'");
      }
    }
    std::optional<std::string> hash;
    if (auto h = obj.find("content_hash"); h != obj.end() && !h->is_null()) {
      if (!h->is_string()) ParseFail(line_no, "'content_hash' must be a string");
      hash = h->get<std::string>();
    }
    std::string id = id_it->get<std::string>();
    DocId doc_id = [&] {
      try {
        return DocId(id);
      } catch (const Error& e) {
        ParseFail(line_no, e.what());
      }
    }();
    if (docs.count(doc_id) != 0) {
      ParseFail(line_no, "duplicate doc_id \"" + id + "\"");
    }
    docs.emplace(doc_id, DocMeta(doc_id, length, std::move(ts), std::move(hash)));
  }
  return CorpusSnapshot(std::move(docs));
}

TopicSet ParseTopics(std::istream& in) {
  TopicSet topics;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (IsBlank(line)) continue;
    std::size_t tab = line.find('\t');
    std::string id = line.substr(0, tab);
    std::optional<std::string> text;
    if (tab != std::string::npos) text = line.substr(tab + 1);
    TopicId topic = [&] {
      try {
        return TopicId(id);
      } catch (const Error& e) {
        ParseFail(line_no, e.what());
      }
    }();
    if (!topics.emplace(topic, TopicDef{topic, std::move(text)}).second) {
      ParseFail(line_no, "duplicate topic id " + id);
    }
  }
  return topics;
}

RunFile Canonicalize(const RunFile& run) {
  std::map<TopicId, Ranking> rankings;
  for (const auto& [topic, ranking] : run.rankings()) {
    std::vector<std::pair<DocId, double>> scored;
    scored.reserve(ranking.size());
    for (const RankedDoc& e : ranking.entries()) scored.emplace_back(e.doc, e.score);
    rankings.emplace(topic, Ranking::Canonical(topic, std::move(scored)));
  }
  return RunFile(run.system_tag(), run.ee_label(), std::move(rankings));
}

void WriteRun(const RunFile& run, std::ostream& out) {
  for (const auto& [topic, ranking] : run.rankings()) {
    for (const RankedDoc& e : ranking.entries()) {
      out << topic.str() << " Q0 " << e.doc.str() << ' ' << e.rank << ' '
          << FormatScore(e.score) << ' ' << run.system_tag() << '\n';
    }
  }
}

void WriteQrels(const Qrels& qrels, std::ostream& out) {
  for (const auto& [topic, docs] : qrels.judgments()) {
    for (const auto& [doc, grade] : docs) {
      out << topic.str() << " 0 " << doc.str() << ' ' << grade << '\n';
    }
  }
}

void WriteManifest(const CorpusSnapshot& corpus, std::ostream& out) {
  for (const auto& [id, meta] : corpus.docs()) {
    ordered_json obj;
    obj["doc_id"] = id.str();
    obj["length"] = meta.length;
    if (meta.timestamp) obj["timestamp"] = meta.timestamp->text;
    if (meta.content_hash) obj["content_hash"] = *meta.content_hash;
    out << obj.dump() << '\n';
  }
}

void WriteTopics(const TopicSet& topics, std::ostream& out) {
  for (const auto& [id, def] : topics) {
    out << id.str();
    if (def.text) out << '\t' << *def.text;
    out << '\n';
  }
}

RunFile LoadRun(const std::filesystem::path& path, const std::string& ee_label,
                Diagnostics* diagnostics) {
  auto in = OpenInput(path);
  Diagnostics local;
  RunFile run = WithFileContext(path, [&] { return ParseRun(in, ee_label, &local); });
  for (Diagnostic& d : local) {
    d.location = path.string() + (d.location.empty() ? "" : ":" + d.location);
    if (diagnostics) diagnostics->push_back(std::move(d));
  }
  return run;
}

Qrels LoadQrels(const std::filesystem::path& path, Diagnostics* diagnostics) {
  auto in = OpenInput(path);
  Diagnostics local;
  Qrels qrels = WithFileContext(path, [&] { return ParseQrels(in, &local); });
  for (Diagnostic& d : local) {
    d.location = path.string() + (d.location.empty() ? "" : ":" + d.location);
    if (diagnostics) diagnostics->push_back(std::move(d));
  }
  return qrels;
}

CorpusSnapshot LoadManifest(const std::filesystem::path& path) {
  auto in = OpenInput(path);
  return WithFileContext(path, [&] { return ParseManifest(in); });
}

TopicSet LoadTopics(const std::filesystem::path& path) {
  auto in = OpenInput(path);
  return WithFileContext(path, [&] { return ParseTopics(in); });
}

std::vector<EEConfig> ParseConfig(std::istream& in,
                                  const std::filesystem::path& base_dir) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::kParse, std::string("invalid config JSON: ") + e.what());
  }
  const nlohmann::json* list = &doc;
  if (doc.is_object()) {
    auto it = doc.find("environments");
    if (it == doc.end()) {
      throw Error(ErrorKind::kParse, "config object lacks an 'environments' array");
    }
    list = &*it;
  }
  if (!list->is_array()) {
    throw Error(ErrorKind::kParse, "config 'environments' must be an array");
  }
  auto resolve = [&](const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() ? path : base_dir / path;
  };
  auto required = [](const nlohmann::json& obj, const char* key, std::size_t index) {
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_string() || it->get<std::string>().empty()) {
      throw Error(ErrorKind::kParse, "environment #" + std::to_string(index) +
                                         ": missing non-empty string '" + key + "'");
    }
    return it->get<std::string>();
  };
  std::vector<EEConfig> out;
  std::set<std::string> labels;
  for (std::size_t i = 0; i < list->size(); ++i) {
    const nlohmann::json& obj = (*list)[i];
    if (!obj.is_object()) {
      throw Error(ErrorKind::kParse, "environment #" + std::to_string(i) +
                                         " must be an object");
    }
    EEConfig cfg;
    cfg.label = required(obj, "label", i);
    cfg.manifest_path = resolve(required(obj, "manifest_path", i));
    cfg.qrels_path = resolve(required(obj, "qrels_path", i));
    if (auto t = obj.find("topics_path"); t != obj.end() && !t->is_null()) {
      cfg.topics_path = resolve(required(obj, "topics_path", i));
    }
    if (!labels.insert(cfg.label).second) {
      throw Error(ErrorKind::kParse, "duplicate environment label '" + cfg.label + "'");
    }
    out.push_back(std::move(cfg));
  }
  return out;
}

std::vector<EEConfig> LoadConfig(const std::filesystem::path& path) {
  auto in = OpenInput(path);
  return WithFileContext(path, [&] { return ParseConfig(in, path.parent_path()); });
}

void WriteConfig(const std::vector<EEConfig>& configs, std::ostream& out) {
  ordered_json list = ordered_json::array();
  for (const EEConfig& cfg : configs) {
    ordered_json obj;
    obj["label"] = cfg.label;
    obj["manifest_path"] = cfg.manifest_path.generic_string();
    if (cfg.topics_path) obj["topics_path"] = cfg.topics_path->generic_string();
    obj["qrels_path"] = cfg.qrels_path.generic_string();
    list.push_back(std::move(obj));
  }
  ordered_json doc;
  doc["environments"] = std::move(list);
  out << doc.dump(2) << '\n';
}

EvaluationEnvironment LoadEnvironment(const EEConfig& config,
                                      Diagnostics* diagnostics) {
  if (config.label.empty()) {
    throw Error(ErrorKind::kInvalid, "environment label must be non-empty");
  }
  EvaluationEnvironment ee;
  ee.label = config.label;
  ee.corpus = LoadManifest(config.manifest_path);
  ee.qrels = LoadQrels(config.qrels_path, diagnostics);
  if (config.topics_path) {
    ee.topics = LoadTopics(*config.topics_path);
  } else {
    for (const TopicId& t : ee.qrels.Topics()) ee.topics.emplace(t, TopicDef{t, {}});
  }
  if (diagnostics) {
    Diagnostics findings = ValidateEnvironment(ee);
    diagnostics->insert(diagnostics->end(), findings.begin(), findings.end());
  }
  return ee;
}

}  // namespace tempeval
