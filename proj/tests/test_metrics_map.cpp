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

#include <algorithm>
#include <cmath>

#include "groundkit/metrics_map.hpp"
#include "groundkit/util.hpp"
#include "oracle_ap.hpp"
#include "test_util.hpp"

using namespace groundkit;

namespace {

std::vector<Detection> sorted_dets(std::vector<Detection> dets) {
  std::sort(dets.begin(), dets.end(), detection_order);
  return dets;
}

}  // namespace

TEST_CASE("match_greedy basics") {
  const std::vector<PixelBox> one_gt = {PixelBox{0, 0, 10, 10}};

  const auto perfect = match_greedy(
      sorted_dets({Detection{"i", "A", PixelBox{0, 0, 10, 10}, 0.9}}), one_gt, 0.5);
  CHECK(perfect == std::vector<bool>{true});

  // single-match rule: second identical detection is a FP
  const auto twins = match_greedy(
      sorted_dets({Detection{"i", "A", PixelBox{0, 0, 10, 10}, 0.9},
                   Detection{"i", "A", PixelBox{0, 0, 10, 10}, 0.8}}),
      one_gt, 0.5);
  CHECK(twins == std::vector<bool>{true, false});

  // IoU = 50/150 = 1/3: FP at 0.5, TP at 0.3
  const std::vector<Detection> shifted =
      sorted_dets({Detection{"i", "A", PixelBox{0, 5, 10, 15}, 0.9}});
  CHECK(match_greedy(shifted, one_gt, 0.5) == std::vector<bool>{false});
  CHECK(match_greedy(shifted, one_gt, 0.3) == std::vector<bool>{true});
}

TEST_CASE("match_greedy takes the highest-IoU unmatched gt") {
  const std::vector<PixelBox> gts = {PixelBox{0, 0, 10, 10},
                                     PixelBox{2, 2, 12, 12}};
  const auto flags = match_greedy(
      sorted_dets({Detection{"i", "A", PixelBox{2, 2, 12, 12}, 0.9},
                   Detection{"i", "A", PixelBox{0, 0, 10, 10}, 0.8}}),
      gts, 0.5);
  CHECK(flags == std::vector<bool>{true, true});
}

TEST_CASE("average_precision hand case: 51/101 and 0.5") {
  // 2 GT; TP at conf .9, FP at conf .8
  const std::vector<bool> flags = {true, false};
  CHECK(std::abs(average_precision(flags, 2, Interpolation::Grid101) -
                 51.0 / 101.0) <= 1e-12);
  CHECK(std::abs(average_precision(flags, 2, Interpolation::Continuous) - 0.5) <=
        1e-12);
}

TEST_CASE("average_precision degenerate cases") {
  CHECK(average_precision({true, true}, 2, Interpolation::Grid101) == 1.0);
  CHECK(average_precision({}, 3, Interpolation::Grid101) == 0.0);
  CHECK(average_precision({false}, 0, Interpolation::Grid101) == 0.0);
  CHECK(average_precision({true, true, false}, 2, Interpolation::Continuous) ==
        1.0);
}

TEST_CASE("map_suite scores perfect predictions as 1 everywhere") {
  std::vector<GtBox> gts;
  std::vector<Detection> dets;
  for (const char* label : {"A", "B", "C"}) {
    for (int i = 0; i < 3; ++i) {
      const PixelBox box{i * 30.0, 0, i * 30.0 + 20, 20};
      gts.push_back(GtBox{"img", label, box});
      dets.push_back(Detection{"img", label, box, 1.0});
    }
  }
  const APResult result = map_suite(dets, gts);
  CHECK(result.map50 == 1.0);
  CHECK(result.map75 == 1.0);
  CHECK(result.map50_95 == 1.0);
  for (const auto& [label, aps] : result.per_class)
    for (double ap : aps) CHECK(ap == 1.0);
}

TEST_CASE("map_suite averages over ground-truth classes only") {
  const std::vector<GtBox> gts = {GtBox{"img", "A", PixelBox{0, 0, 10, 10}},
                                  GtBox{"img", "B", PixelBox{20, 20, 30, 30}}};
  const std::vector<Detection> dets = {
      Detection{"img", "A", PixelBox{0, 0, 10, 10}, 1.0},
      Detection{"img", "C", PixelBox{50, 50, 60, 60}, 1.0}};
  const APResult result = map_suite(dets, gts);
  CHECK(result.map50 == 0.5);  // A perfect, B missed, C ignored
  CHECK(result.per_class.count("C") == 0);
  REQUIRE(result.ignored_labels.size() == 1);
  CHECK(result.ignored_labels[0] == "C");
}

TEST_CASE("map_suite rejects empty ground truth") {
  CHECK_THROWS_AS(map_suite({}, {}), ValidationError);
}

TEST_CASE("map50_95 is exactly the mean of the per-threshold values") {
  gktest::Rng rng(31337);
  for (int trial = 0; trial < 50; ++trial) {
    const auto inst = gktest::random_metric_instance(rng);
    const APResult result = map_suite(inst.dets, inst.gts);
    double sum = 0.0;
    for (double v : result.map_per_threshold) sum += v;
    CHECK(result.map50_95 == sum / 10.0);
    CHECK(result.map50 == result.map_per_threshold[0]);
    CHECK(result.map75 == result.map_per_threshold[5]);
  }
}

TEST_CASE("per-class AP is nonincreasing in the IoU threshold") {
  gktest::Rng rng(777);
  for (int trial = 0; trial < 200; ++trial) {
    const auto inst = gktest::random_metric_instance(rng);
    const APResult result = map_suite(inst.dets, inst.gts);
    for (const auto& [label, aps] : result.per_class) {
      for (size_t t = 1; t < aps.size(); ++t) CHECK(aps[t] <= aps[t - 1] + 1e-12);
      for (double ap : aps) {
        CHECK(ap >= 0.0);
        CHECK(ap <= 1.0);
      }
    }
  }
}

TEST_CASE("AP is invariant under uniform scaling") {
  gktest::Rng rng(888);
  for (int trial = 0; trial < 100; ++trial) {
    auto inst = gktest::random_metric_instance(rng);
    const APResult base = map_suite(inst.dets, inst.gts);
    const double s = 4.0;  // power of two keeps the scaling exact
    for (auto& d : inst.dets)
      d.box = PixelBox{d.box.x0 * s, d.box.y0 * s, d.box.x1 * s, d.box.y1 * s};
    for (auto& g : inst.gts)
      g.box = PixelBox{g.box.x0 * s, g.box.y0 * s, g.box.x1 * s, g.box.y1 * s};
    const APResult scaled = map_suite(inst.dets, inst.gts);
    CHECK(base.map50_95 == scaled.map50_95);
    CHECK(base.map50 == scaled.map50);
  }
}

TEST_CASE("detection input order does not matter") {
  gktest::Rng rng(999);
  for (int trial = 0; trial < 100; ++trial) {
    auto inst = gktest::random_metric_instance(rng);
    const APResult base = map_suite(inst.dets, inst.gts);
    std::shuffle(inst.dets.begin(), inst.dets.end(), rng.engine);
    const APResult shuffled = map_suite(inst.dets, inst.gts);
    CHECK(base.map50_95 == shuffled.map50_95);
  }
}

TEST_CASE("map_suite matches the brute-force oracle") {
  gktest::Rng rng(20260810);
  for (int trial = 0; trial < 300; ++trial) {
    const auto inst = gktest::random_metric_instance(rng);
    for (bool grid101 : {true, false}) {
      const Interpolation interp =
          grid101 ? Interpolation::Grid101 : Interpolation::Continuous;
      const APResult ours = map_suite(inst.dets, inst.gts, interp);
      const oracle::SuiteResult ref =
          oracle::map_suite(inst.dets, inst.gts, grid101);
      for (size_t t = 0; t < 10; ++t)
        CHECK(std::abs(ours.map_per_threshold[t] - ref.map_per_threshold[t]) <=
              1e-9);
      CHECK(std::abs(ours.map50_95 - ref.map50_95) <= 1e-9);
      for (const auto& [label, aps] : ours.per_class)
        for (size_t t = 0; t < aps.size(); ++t)
          CHECK(std::abs(aps[t] - ref.per_class.at(label)[t]) <= 1e-9);
    }
  }
}

TEST_CASE("map_suite is deterministic across worker counts") {
  gktest::Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const auto inst = gktest::random_metric_instance(rng);
    const APResult serial = map_suite(inst.dets, inst.gts, Interpolation::Grid101, 1);
    const APResult parallel = map_suite(inst.dets, inst.gts, Interpolation::Grid101, 4);
    CHECK(serial.map50_95 == parallel.map50_95);
    CHECK(serial.per_class == parallel.per_class);
  }
}
