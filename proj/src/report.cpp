/* Copyright 2026 The groundkit authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#include "groundkit/report.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "groundkit/util.hpp"

namespace groundkit {

using nlohmann::json;

namespace {

constexpr const char* kColumns[] = {"mAP50:95", "mAP50",   "mAP75", "R_loc",
                                    "R_shape",  "R_cls",   "R_total"};
constexpr size_t kNumColumns = 7;

// Metric column order; AP values arrive as fractions, RoDeO as [0, 100].
std::array<double, kNumColumns> row_values(const EvalRun& run) {
  return {run.ap.map50_95 * 100.0, run.ap.map50 * 100.0,
          run.ap.map75 * 100.0,    run.rodeo.r_loc,
          run.rodeo.r_shape,       run.rodeo.r_cls,
          run.rodeo.r_total};
}

enum class Flag { None, Best, Second };

std::vector<std::array<Flag, kNumColumns>> column_flags(
    const std::vector<EvalRun>& runs) {
  std::vector<std::array<Flag, kNumColumns>> flags(
      runs.size(), std::array<Flag, kNumColumns>{});
  for (size_t col = 0; col < kNumColumns; ++col) {
    std::vector<double> values;
    for (const EvalRun& run : runs) values.push_back(row_values(run)[col]);
    const double best = *std::max_element(values.begin(), values.end());
    double second = -1.0;
    for (double v : values)
      if (v < best) second = std::max(second, v);
    for (size_t r = 0; r < runs.size(); ++r) {
      if (values[r] == best) flags[r][col] = Flag::Best;
      else if (second >= 0.0 && values[r] == second) flags[r][col] = Flag::Second;
    }
  }
  return flags;
}

std::string markdown_cell(double value, Flag flag) {
  const std::string text = format_fixed2(value);
  switch (flag) {
    case Flag::Best: return "**" + text + "**";
    case Flag::Second: return "*" + text + "*";
    case Flag::None: return text;
  }
  return text;
}

std::string csv_cell(double value, Flag flag) {
  const std::string text = format_fixed2(value);
  switch (flag) {
    case Flag::Best: return text + " [best]";
    case Flag::Second: return text + " [2nd]";
    case Flag::None: return text;
  }
  return text;
}

json rodeo_to_json(const RodeoScores& s) {
  return json{
      {"r_loc", s.r_loc},
      {"r_shape", s.r_shape},
      {"r_cls", s.r_cls},
      {"r_total", s.r_total},
      {"matched_pairs", s.matched_pairs},
      {"unmatched_preds", s.unmatched_preds},
      {"unmatched_gts", s.unmatched_gts},
  };
}

RodeoScores rodeo_from_json(const json& j) {
  RodeoScores s;
  s.r_loc = j.value("r_loc", 0.0);
  s.r_shape = j.value("r_shape", 0.0);
  s.r_cls = j.value("r_cls", 0.0);
  s.r_total = j.value("r_total", 0.0);
  s.matched_pairs = j.value("matched_pairs", 0u);
  s.unmatched_preds = j.value("unmatched_preds", 0u);
  s.unmatched_gts = j.value("unmatched_gts", 0u);
  return s;
}

}  // namespace

TableFormat table_format_from_string(std::string_view s) {
  if (s == "markdown" || s == "md") return TableFormat::Markdown;
  if (s == "csv") return TableFormat::Csv;
  if (s == "structured" || s == "json") return TableFormat::Structured;
  throw ConfigError("unknown table format: '" + std::string(s) +
                    "' (expected markdown, csv, or structured)");
}

std::string comparison_table(const std::vector<EvalRun>& runs,
                             TableFormat format) {
  if (runs.empty()) throw ValidationError("comparison table needs at least one run");
  const auto flags = column_flags(runs);

  if (format == TableFormat::Structured) {
    json rows = json::array();
    for (size_t r = 0; r < runs.size(); ++r) {
      const auto values = row_values(runs[r]);
      json row = {
          {"method", runs[r].method_name},
          {"params", runs[r].params_count},
      };
      if (runs[r].train_samples) row["train_samples"] = *runs[r].train_samples;
      json cells = json::object();
      json best = json::array();
      json second = json::array();
      for (size_t col = 0; col < kNumColumns; ++col) {
        cells[kColumns[col]] = values[col];
        if (flags[r][col] == Flag::Best) best.push_back(kColumns[col]);
        if (flags[r][col] == Flag::Second) second.push_back(kColumns[col]);
      }
      row["values"] = cells;
      row["best"] = best;
      row["second_best"] = second;
      rows.push_back(row);
    }
    return json{{"columns", json(kColumns)}, {"rows", rows}}.dump(2) + "\n";
  }

  std::string out;
  if (format == TableFormat::Markdown) {
    out += "| Method | Params | Train. Samp. |";
    for (const char* col : kColumns) out += std::string(" ") + col + " |";
    out += "\n|---|---|---|";
    for (size_t col = 0; col < kNumColumns; ++col) out += "---|";
    out += "\n";
    for (size_t r = 0; r < runs.size(); ++r) {
      const auto values = row_values(runs[r]);
      out += "| " + runs[r].method_name + " | " + runs[r].params_count + " | ";
      out += runs[r].train_samples ? std::to_string(*runs[r].train_samples) : "";
      out += " |";
      for (size_t col = 0; col < kNumColumns; ++col)
        out += " " + markdown_cell(values[col], flags[r][col]) + " |";
      out += "\n";
    }
    return out;
  }

  out += "method,params,train_samples";
  for (const char* col : kColumns) out += std::string(",") + col;
  out += "\n";
  for (size_t r = 0; r < runs.size(); ++r) {
    const auto values = row_values(runs[r]);
    out += csv_quote(runs[r].method_name) + "," +
           csv_quote(runs[r].params_count) + ",";
    out += runs[r].train_samples ? std::to_string(*runs[r].train_samples) : "";
    for (size_t col = 0; col < kNumColumns; ++col)
      out += "," + csv_cell(values[col], flags[r][col]);
    out += "\n";
  }
  return out;
}

std::string per_class_chart_data(const EvalRun& run) {
  if (run.per_class.empty())
    throw ValidationError("per-class chart needs per-class scores");
  std::vector<std::pair<std::string, double>> entries;
  for (const auto& [label, scores] : run.per_class)
    entries.emplace_back(label, scores.r_total);
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  json out_entries = json::array();
  for (size_t i = 0; i < entries.size(); ++i)
    out_entries.push_back({{"rank", i + 1},
                           {"class", entries[i].first},
                           {"r_total", entries[i].second}});
  return json{{"method", run.method_name},
              {"metric", "rodeo_total"},
              {"entries", out_entries}}.dump(2) + "\n";
}

std::string chart_comparison(const std::vector<EvalRun>& runs) {
  if (runs.empty()) throw ValidationError("chart comparison needs at least one run");
  std::set<std::string> class_set;
  for (const EvalRun& run : runs)
    for (const auto& [label, scores] : run.per_class) class_set.insert(label);

  json classes = json::array();
  std::map<std::string, int> wins;
  for (const EvalRun& run : runs) wins[run.method_name] = 0;
  for (const std::string& label : class_set) {
    json values = json::object();
    double best = -1.0;
    std::vector<std::string> winners;
    for (const EvalRun& run : runs) {
      auto it = run.per_class.find(label);
      if (it == run.per_class.end()) continue;
      values[run.method_name] = it->second.r_total;
      if (it->second.r_total > best) {
        best = it->second.r_total;
        winners = {run.method_name};
      } else if (it->second.r_total == best) {
        winners.push_back(run.method_name);
      }
    }
    for (const std::string& w : winners) ++wins[w];
    classes.push_back({{"class", label},
                       {"values", values},
                       {"winners", json(winners)}});
  }
  return json{{"metric", "rodeo_total"},
              {"classes", classes},
              {"wins", json(wins)}}.dump(2) + "\n";
}

nlohmann::json run_to_json(const EvalRun& run) {
  json per_class_ap = json::object();
  for (const auto& [label, aps] : run.ap.per_class) per_class_ap[label] = aps;
  json ap = {
      {"thresholds", run.ap.thresholds},
      {"per_class", per_class_ap},
      {"map_per_threshold", run.ap.map_per_threshold},
      {"map50", run.ap.map50},
      {"map75", run.ap.map75},
      {"map50_95", run.ap.map50_95},
      {"ignored_labels", run.ap.ignored_labels},
  };
  json per_class_rodeo = json::object();
  for (const auto& [label, scores] : run.per_class)
    per_class_rodeo[label] = rodeo_to_json(scores);
  json j = {
      {"run_id", run.run_id},
      {"method", run.method_name},
      {"params", run.params_count},
      {"ap", ap},
      {"rodeo", rodeo_to_json(run.rodeo)},
      {"per_class_rodeo", per_class_rodeo},
      {"notes", run.notes},
      {"config_fingerprint", run.config_fingerprint},
      {"metadata", run.metadata},
  };
  if (run.train_samples) j["train_samples"] = *run.train_samples;
  return j;
}

EvalRun run_from_json(const nlohmann::json& j) {
  EvalRun run;
  run.run_id = j.value("run_id", "");
  run.method_name = j.value("method", "");
  run.params_count = j.value("params", "");
  if (j.contains("train_samples"))
    run.train_samples = j["train_samples"].get<long long>();
  const json& ap = j.at("ap");
  run.ap.thresholds = ap.value("thresholds", std::vector<double>{});
  if (ap.contains("per_class"))
    for (auto it = ap["per_class"].begin(); it != ap["per_class"].end(); ++it)
      run.ap.per_class[it.key()] = it.value().get<std::vector<double>>();
  run.ap.map_per_threshold =
      ap.value("map_per_threshold", std::vector<double>{});
  run.ap.map50 = ap.value("map50", 0.0);
  run.ap.map75 = ap.value("map75", 0.0);
  run.ap.map50_95 = ap.value("map50_95", 0.0);
  run.ap.ignored_labels = ap.value("ignored_labels", std::vector<std::string>{});
  run.rodeo = rodeo_from_json(j.at("rodeo"));
  if (j.contains("per_class_rodeo"))
    for (auto it = j["per_class_rodeo"].begin(); it != j["per_class_rodeo"].end(); ++it)
      run.per_class[it.key()] = rodeo_from_json(it.value());
  run.notes = j.value("notes", std::vector<std::string>{});
  run.config_fingerprint = j.value("config_fingerprint", "");
  run.metadata = j.value("metadata", json::object());
  return run;
}

void write_run_archive(const std::string& path,
                       const std::vector<EvalRun>& runs) {
  json entries = json::array();
  for (const EvalRun& run : runs) entries.push_back(run_to_json(run));
  write_text_file(path, json{{"runs", entries}}.dump(2) + "\n");
}

std::vector<EvalRun> read_run_archive(const std::string& path) {
  json doc;
  try {
    doc = json::parse(read_text_file(path));
  } catch (const json::exception& e) {
    throw ValidationError("run archive " + path + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("runs") || !doc["runs"].is_array())
    throw ValidationError("run archive " + path +
                          ": expected {\"runs\": [...]}");
  std::vector<EvalRun> runs;
  for (const json& entry : doc["runs"]) runs.push_back(run_from_json(entry));
  return runs;
}

}  // namespace groundkit
