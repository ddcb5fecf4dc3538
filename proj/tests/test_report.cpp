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
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "groundkit/report.hpp"
#include "groundkit/util.hpp"
#include "test_util.hpp"

using namespace groundkit;
using nlohmann::json;

namespace {

// Reference comparison row used for the rendering golden test.
EvalRun ours_fixture() {
  EvalRun run;
  run.run_id = "run-fixture";
  run.method_name = "Ours";
  run.params_count = "0.23B";
  run.train_samples = 16087;
  run.ap.map50_95 = 0.1081;
  run.ap.map50 = 0.255;
  run.ap.map75 = 0.0745;
  run.rodeo.r_loc = 56.92;
  run.rodeo.r_shape = 41.41;
  run.rodeo.r_cls = 80.92;
  run.rodeo.r_total = 54.38;
  run.config_fingerprint = "fp-0";
  return run;
}

EvalRun named(const std::string& name, double scale) {
  EvalRun run = ours_fixture();
  run.method_name = name;
  run.rodeo.r_total *= scale;
  return run;
}

}  // namespace

TEST_CASE("fixed-2 formatting rounds half away from zero") {
  CHECK(format_fixed2(25.5) == "25.50");
  CHECK(format_fixed2(10.81) == "10.81");
  CHECK(format_fixed2(0.125) == "0.13");
  CHECK(format_fixed2(99.999) == "100.00");
  CHECK(format_fixed2(0.0) == "0.00");
}

TEST_CASE("markdown table for the fixture row matches the golden file") {
  const std::string table = comparison_table({ours_fixture()}, TableFormat::Markdown);
  CHECK(table == read_text_file(gktest::golden("table_ours.md")));
}

TEST_CASE("single run is flagged best in every column") {
  const std::string csv = comparison_table({ours_fixture()}, TableFormat::Csv);
  CHECK(csv.find("10.81 [best]") != std::string::npos);
  CHECK(csv.find("54.38 [best]") != std::string::npos);
  CHECK(csv.find("[2nd]") == std::string::npos);
}

TEST_CASE("ties share the best flag; second-best is the next distinct value") {
  EvalRun a = named("A", 1.0), b = named("B", 1.0), c = named("C", 0.5);
  const std::string md = comparison_table({a, b, c}, TableFormat::Markdown);
  CHECK(md.find("| A | 0.23B | 16087 |") != std::string::npos);
  // both A and B carry the bold total, C is italic second best
  CHECK(md.find("**54.38**") != std::string::npos);
  CHECK(md.find("*27.19*") != std::string::npos);

  const std::string structured =
      comparison_table({a, b, c}, TableFormat::Structured);
  const json doc = json::parse(structured);
  CHECK(doc["rows"][0]["best"].size() == 7);
  CHECK(doc["rows"][1]["best"].size() == 7);
  bool c_second_total = false;
  for (const auto& col : doc["rows"][2]["second_best"])
    if (col == "R_total") c_second_total = true;
  CHECK(c_second_total);
}

TEST_CASE("rendering is a pure function of its inputs") {
  const std::vector<EvalRun> runs = {named("A", 1.0), named("B", 0.9)};
  CHECK(comparison_table(runs, TableFormat::Markdown) ==
        comparison_table(runs, TableFormat::Markdown));
  CHECK(comparison_table(runs, TableFormat::Csv) ==
        comparison_table(runs, TableFormat::Csv));
}

TEST_CASE("chart data is sorted descending with ranks") {
  EvalRun run = ours_fixture();
  for (int i = 0; i < 21; ++i) {
    RodeoScores s;
    s.r_total = 100.0 - i * 3.5;
    run.per_class["disease_" + std::to_string(i)] = s;
  }
  const json doc = json::parse(per_class_chart_data(run));
  REQUIRE(doc["entries"].size() == 21);
  double prev = 1e9;
  for (size_t i = 0; i < doc["entries"].size(); ++i) {
    const double value = doc["entries"][i]["r_total"].get<double>();
    CHECK(value <= prev);
    prev = value;
    CHECK(doc["entries"][i]["rank"].get<int>() == static_cast<int>(i) + 1);
  }
}

TEST_CASE("single-class chart data has one entry ranked 1") {
  EvalRun run = ours_fixture();
  RodeoScores s;
  s.r_total = 42.0;
  run.per_class["only"] = s;
  const json doc = json::parse(per_class_chart_data(run));
  REQUIRE(doc["entries"].size() == 1);
  CHECK(doc["entries"][0]["rank"] == 1);
  CHECK_THROWS_AS(per_class_chart_data(ours_fixture()), ValidationError);
}

TEST_CASE("rank comparison counts 14 of 21 wins for the fixture") {
  EvalRun ours = ours_fixture();
  EvalRun base = named("Base", 1.0);
  for (int i = 0; i < 21; ++i) {
    const std::string cls = "disease_" + std::to_string(i);
    RodeoScores o, b;
    o.r_total = i < 14 ? 80.0 : 40.0;  // ours wins the first 14
    b.r_total = i < 14 ? 60.0 : 55.0;
    ours.per_class[cls] = o;
    base.per_class[cls] = b;
  }
  const json doc = json::parse(chart_comparison({ours, base}));
  CHECK(doc["wins"]["Ours"] == 14);
  CHECK(doc["wins"]["Base"] == 7);
  REQUIRE(doc["classes"].size() == 21);
}

TEST_CASE("run archive round-trips losslessly") {
  EvalRun run = ours_fixture();
  run.ap.thresholds = coco_thresholds();
  run.ap.per_class["cardiomegaly"] = {0.9, 0.8, 0.7, 0.6, 0.5,
                                      0.4, 0.3, 0.2, 0.1, 0.05};
  run.ap.map_per_threshold = run.ap.per_class["cardiomegaly"];
  run.ap.ignored_labels = {"zebra"};
  RodeoScores s;
  s.r_loc = 12.5;
  s.r_total = 33.25;
  s.matched_pairs = 3;
  run.per_class["cardiomegaly"] = s;
  run.notes = {"a note"};
  run.metadata = {{"interpolation", "101pt"}, {"rodeo_sigma", 1.0}};

  const std::string path =
      (std::filesystem::temp_directory_path() / "gk_archive.json").string();
  write_run_archive(path, {run, named("Base", 0.5)});
  const std::vector<EvalRun> back = read_run_archive(path);
  REQUIRE(back.size() == 2);
  CHECK(run_to_json(back[0]) == run_to_json(run));
  CHECK(back[0].ap.per_class.at("cardiomegaly") ==
        run.ap.per_class.at("cardiomegaly"));
  CHECK(back[0].per_class.at("cardiomegaly").matched_pairs == 3);
  CHECK(back[0].train_samples == run.train_samples);
  CHECK(back[1].method_name == "Base");
  std::filesystem::remove(path);
}
