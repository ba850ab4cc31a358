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

#include "tempeval/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "json.hpp"

namespace tempeval {
namespace {

using ordered_json = nlohmann::ordered_json;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string MarkdownField(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

std::string RenderTable(const Table& t, Format format) {
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& cells) {
    if (format == Format::kCsv) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out << ',';
        out << CsvField(cells[i]);
      }
    } else {
      out << '|';
      for (const std::string& c : cells) out << ' ' << MarkdownField(c) << " |";
    }
    out << '\n';
  };
  line(t.header);
  if (format == Format::kMarkdown) {
    out << '|';
    for (std::size_t i = 0; i < t.header.size(); ++i) out << "---|";
    out << '\n';
  }
  for (const auto& row : t.rows) line(row);
  return out.str();
}

std::string Cell(const std::optional<double>& v, int precision) {
  return v ? FormatFixed(*v, precision) : std::string();
}

std::string Cell(const std::optional<bool>& v) {
  if (!v) return {};
  return *v ? "true" : "false";
}

ordered_json JsonValue(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json JsonValue(const std::optional<bool>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

std::optional<double> ReadReal(const nlohmann::json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_number()) {
    throw Error(ErrorKind::kParse, std::string("'") + key + "' must be a number");
  }
  return it->get<double>();
}

std::optional<bool> ReadBool(const nlohmann::json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_boolean()) {
    throw Error(ErrorKind::kParse, std::string("'") + key + "' must be a boolean");
  }
  return it->get<bool>();
}

}  // namespace

Format ParseFormat(std::string_view name) {
  if (name == "csv") return Format::kCsv;
  if (name == "markdown" || name == "md") return Format::kMarkdown;
  if (name == "json") return Format::kJson;
  throw Error(ErrorKind::kUsage, "unknown format '" + std::string(name) +
                                     "' (expected csv, markdown or json)");
}

std::string_view ScenarioName(Scenario s) {
  return s == Scenario::kDprimeTQ ? "dtq" : "dtq-prime";
}

Scenario ParseScenario(std::string_view name) {
  if (name == "dtq") return Scenario::kDprimeTQ;
  if (name == "dtq-prime") return Scenario::kDprimeTQprime;
  throw Error(ErrorKind::kUsage, "unknown scenario '" + std::string(name) +
                                     "' (expected dtq or dtq-prime)");
}

std::string FormatFixed(double value, int precision) {
  if (!std::isfinite(value)) {
    if (std::isnan(value)) return "nan";
    return value > 0 ? "inf" : "-inf";
  }
  precision = std::clamp(precision, 0, 1000);
  // 1100 fractional digits represent every finite double exactly.
  std::string buf(1500, '\0');
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                           std::chars_format::fixed, 1100);
  buf.resize(static_cast<std::size_t>(res.ptr - buf.data()));

  bool negative = buf.front() == '-';
  std::string digits = negative ? buf.substr(1) : buf;
  const std::size_t dot = digits.find('.');
  std::string int_part = digits.substr(0, dot);
  std::string frac = digits.substr(dot + 1);

  std::string kept = int_part + frac.substr(0, precision);
  const char first_dropped = frac[precision];
  const bool rest_nonzero =
      frac.find_first_not_of('0', static_cast<std::size_t>(precision) + 1) !=
      std::string::npos;
  bool round_up = false;
  if (first_dropped > '5' || (first_dropped == '5' && rest_nonzero)) {
    round_up = true;
  } else if (first_dropped == '5') {
    round_up = (kept.back() - '0') % 2 == 1;
  }
  if (round_up) {
    int i = static_cast<int>(kept.size()) - 1;
    while (i >= 0 && kept[i] == '9') kept[i--] = '0';
    if (i < 0) {
      kept.insert(kept.begin(), '1');
    } else {
      ++kept[i];
    }
  }
  const std::size_t int_len = kept.size() - static_cast<std::size_t>(precision);
  std::string out = kept.substr(0, int_len);
  if (precision > 0) out += "." + kept.substr(int_len);
  if (negative && kept.find_first_not_of('0') != std::string::npos) out = "-" + out;
  return out;
}

void LongitudinalMatrix::SortRows(const std::vector<std::string>& ee_order) {
  auto position = [&](const std::string& label) {
    auto it = std::find(ee_order.begin(), ee_order.end(), label);
    return static_cast<std::size_t>(it - ee_order.begin());
  };
  std::stable_sort(rows.begin(), rows.end(),
                   [&](const ChangeReport& a, const ChangeReport& b) {
                     if (a.system_tag != b.system_tag) return a.system_tag < b.system_tag;
                     return position(a.ee_label) < position(b.ee_label);
                   });
}

std::string Render(const LongitudinalMatrix& matrix, Format format,
                   const RenderOptions& options) {
  if (format == Format::kJson) {
    ordered_json doc;
    doc["collection"] = matrix.collection_label;
    ordered_json measures = ordered_json::array();
    for (const MeasureSpec& m : matrix.measures) measures.push_back(m.ToString());
    doc["measures"] = std::move(measures);
    ordered_json rows = ordered_json::array();
    for (const ChangeReport& r : matrix.rows) {
      ordered_json row;
      row["system"] = r.system_tag;
      row["ee"] = r.ee_label;
      row["scenario"] = std::string(ScenarioName(r.scenario));
      row["pivot"] = r.pivot;
      row["rbo"] = JsonValue(r.rbo_mean);
      ordered_json cells = ordered_json::object();
      for (const MeasureSpec& m : matrix.measures) {
        auto it = r.cells.find(m);
        const MeasureCells c = it == r.cells.end() ? MeasureCells{} : it->second;
        ordered_json cell;
        cell["arp"] = JsonValue(c.arp);
        cell["rmse"] = JsonValue(c.rmse);
        cell["re_delta"] = JsonValue(c.re_delta);
        cell["delta_ri"] = JsonValue(c.delta_ri);
        cell["significant"] = JsonValue(c.significant);
        cells[m.ToString()] = std::move(cell);
      }
      row["cells"] = std::move(cells);
      rows.push_back(std::move(row));
    }
    doc["rows"] = std::move(rows);
    return doc.dump(2) + "\n";
  }

  Table t;
  t.header = {"collection", "system", "ee", "scenario", "pivot", "rbo"};
  for (const MeasureSpec& m : matrix.measures) {
    const std::string name = m.ToString();
    for (const char* col : {"arp", "rmse", "re_delta", "delta_ri", "significant"}) {
      t.header.push_back(std::string(col) + "_" + name);
    }
  }
  for (const ChangeReport& r : matrix.rows) {
    std::vector<std::string> row = {matrix.collection_label, r.system_tag, r.ee_label,
                                    std::string(ScenarioName(r.scenario)),
                                    r.pivot ? "true" : "false",
                                    Cell(r.rbo_mean, options.precision)};
    for (const MeasureSpec& m : matrix.measures) {
      auto it = r.cells.find(m);
      const MeasureCells c = it == r.cells.end() ? MeasureCells{} : it->second;
      row.push_back(Cell(c.arp, options.precision));
      row.push_back(Cell(c.rmse, options.precision));
      row.push_back(Cell(c.re_delta, options.precision));
      row.push_back(Cell(c.delta_ri, options.precision));
      row.push_back(Cell(c.significant));
    }
    t.rows.push_back(std::move(row));
  }
  return RenderTable(t, format);
}

LongitudinalMatrix ParseMatrixJson(std::string_view json) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::kParse, std::string("invalid matrix JSON: ") + e.what());
  }
  try {
    LongitudinalMatrix m;
    m.collection_label = doc.at("collection").get<std::string>();
    for (const auto& name : doc.at("measures")) {
      m.measures.push_back(MeasureSpec::Parse(name.get<std::string>()));
    }
    for (const auto& row : doc.at("rows")) {
      ChangeReport r;
      r.system_tag = row.at("system").get<std::string>();
      r.ee_label = row.at("ee").get<std::string>();
      r.scenario = ParseScenario(row.at("scenario").get<std::string>());
      r.pivot = row.at("pivot").get<bool>();
      r.rbo_mean = ReadReal(row, "rbo");
      const auto& cells = row.at("cells");
      for (const MeasureSpec& spec : m.measures) {
        const auto& c = cells.at(spec.ToString());
        r.cells[spec] = MeasureCells{ReadReal(c, "arp"), ReadReal(c, "rmse"),
                                     ReadReal(c, "re_delta"), ReadReal(c, "delta_ri"),
                                     ReadBool(c, "significant")};
      }
      m.rows.push_back(std::move(r));
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kParse, std::string("malformed matrix JSON: ") + e.what());
  }
}

std::string RenderChangeSummary(const ChangeSummary& summary, Format format,
                                const RenderOptions& options) {
  const std::pair<const char*, const ComponentDiff*> components[] = {
      {"documents", &summary.documents},
      {"topics", &summary.topics},
      {"qrels", &summary.qrels}};
  if (format == Format::kJson) {
    ordered_json doc;
    doc["from"] = summary.from_label;
    doc["to"] = summary.to_label;
    for (const auto& [name, diff] : components) {
      ordered_json c;
      c["total_from"] = diff->total_from();
      c["total_to"] = diff->total_to();
      c["relative_delta"] = JsonValue(diff->relative_delta());
      c["create"] = diff->created().size();
      c["update"] = diff->updated().size();
      c["delete"] = diff->deleted().size();
      doc[name] = std::move(c);
    }
    return doc.dump(2) + "\n";
  }
  Table t;
  t.header = {"component", "from",    "to",     "total_from", "total_to",
              "relative_delta", "percent", "create", "update",     "delete"};
  const int pct_precision = std::max(0, options.precision - 2);
  for (const auto& [name, diff] : components) {
    const auto delta = diff->relative_delta();
    t.rows.push_back({name, summary.from_label, summary.to_label,
                      std::to_string(diff->total_from()), std::to_string(diff->total_to()),
                      Cell(delta, options.precision),
                      delta ? FormatFixed(*delta * 100.0, pct_precision) + "%" : "",
                      std::to_string(diff->created().size()),
                      std::to_string(diff->updated().size()),
                      std::to_string(diff->deleted().size())});
  }
  return RenderTable(t, format);
}

std::string RenderEvaluation(const std::vector<EvaluationRow>& rows, Format format,
                             const RenderOptions& options) {
  if (format == Format::kJson) {
    ordered_json list = ordered_json::array();
    for (const EvaluationRow& r : rows) {
      ordered_json row;
      row["system"] = r.system_tag;
      row["ee"] = r.ee_label;
      row["measure"] = r.measure.ToString();
      row["topic"] = r.topic ? ordered_json(*r.topic) : ordered_json(nullptr);
      row["value"] = r.value;
      row["evaluated_topics"] = r.evaluated_topics;
      list.push_back(std::move(row));
    }
    return list.dump(2) + "\n";
  }
  Table t;
  t.header = {"system", "ee", "measure", "topic", "value", "evaluated_topics"};
  for (const EvaluationRow& r : rows) {
    t.rows.push_back({r.system_tag, r.ee_label, r.measure.ToString(),
                      r.topic ? *r.topic : "all", FormatFixed(r.value, options.precision),
                      std::to_string(r.evaluated_topics)});
  }
  return RenderTable(t, format);
}

}  // namespace tempeval
