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
#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "groundkit/metrics_map.hpp"
#include "groundkit/metrics_rodeo.hpp"

namespace groundkit {

// One evaluated method: everything needed for a comparison-table row and a
// per-class chart.
struct EvalRun {
  std::string run_id;
  std::string method_name;
  std::string params_count;  // display text, e.g. "0.23B"; may be empty
  std::optional<long long> train_samples;
  APResult ap;                                   // fractions in [0, 1]
  RodeoScores rodeo;                             // already in [0, 100]
  std::map<std::string, RodeoScores> per_class;  // keyed by class name
  std::vector<std::string> notes;
  std::string config_fingerprint;
  nlohmann::json metadata;  // metric decisions: interpolation, sigma, ...
};

enum class TableFormat { Markdown, Csv, Structured };

TableFormat table_format_from_string(std::string_view s);

// One row per run, columns ordered mAP50:95, mAP50, mAP75, R_loc, R_shape,
// R_cls, R_total; AP fractions are printed as percentages with 2 decimals.
// Best per column is flagged (markdown: **bold**, csv: " [best]"), second
// best likewise (*italic* / " [2nd]"); ties share the flag.
std::string comparison_table(const std::vector<EvalRun>& runs,
                             TableFormat format);

// (class, r_total) pairs sorted descending with rank annotations, as a JSON
// chart-data document.
std::string per_class_chart_data(const EvalRun& run);

// Multi-run chart data: per-class totals for every run, the winning method
// per class, and per-method win counts.
std::string chart_comparison(const std::vector<EvalRun>& runs);

nlohmann::json run_to_json(const EvalRun& run);
EvalRun run_from_json(const nlohmann::json& j);

// Run archive: {"runs": [...]} with full-precision values.
void write_run_archive(const std::string& path,
                       const std::vector<EvalRun>& runs);
std::vector<EvalRun> read_run_archive(const std::string& path);

}  // namespace groundkit
