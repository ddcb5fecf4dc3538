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

// Test-only brute-force average-precision oracle. Deliberately slow and
// independent of the library's metric code paths: it recomputes overlap,
// matching, and precision/recall integration from first principles so the
// two implementations can only agree by being right. Shares only the plain
// Detection/GtBox data types.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "groundkit/metrics_map.hpp"

namespace oracle {

using groundkit::Detection;
using groundkit::GtBox;
using groundkit::PixelBox;

inline double overlap_ratio(const PixelBox& a, const PixelBox& b) {
  const double lo_x = a.x0 > b.x0 ? a.x0 : b.x0;
  const double hi_x = a.x1 < b.x1 ? a.x1 : b.x1;
  const double lo_y = a.y0 > b.y0 ? a.y0 : b.y0;
  const double hi_y = a.y1 < b.y1 ? a.y1 : b.y1;
  double inter = 0.0;
  if (hi_x > lo_x && hi_y > lo_y) inter = (hi_x - lo_x) * (hi_y - lo_y);
  const double area_a = (a.x1 - a.x0) * (a.y1 - a.y0);
  const double area_b = (b.x1 - b.x0) * (b.y1 - b.y0);
  const double uni = area_a + area_b - inter;
  if (uni <= 0.0) return 0.0;
  return inter / uni;
}

// Same ordering contract as the library, written out longhand.
inline bool ranked_before(const Detection& a, const Detection& b) {
  if (a.confidence > b.confidence) return true;
  if (a.confidence < b.confidence) return false;
  if (a.box.x0 != b.box.x0) return a.box.x0 < b.box.x0;
  if (a.box.y0 != b.box.y0) return a.box.y0 < b.box.y0;
  if (a.box.x1 != b.box.x1) return a.box.x1 < b.box.x1;
  if (a.box.y1 != b.box.y1) return a.box.y1 < b.box.y1;
  if (a.image_id != b.image_id) return a.image_id < b.image_id;
  return a.label < b.label;
}

// One class at one threshold: rank detections, match each against the best
// remaining ground truth of its image, then integrate the PR curve by
// rescanning everything for every point.
inline double class_ap(std::vector<Detection> dets,
                       const std::vector<GtBox>& all_gts,
                       const std::string& label, double thr, bool grid101) {
  std::vector<GtBox> gts;
  for (const GtBox& g : all_gts)
    if (g.label == label) gts.push_back(g);
  if (gts.empty()) return 0.0;

  std::vector<Detection> ranked;
  for (const Detection& d : dets)
    if (d.label == label) ranked.push_back(d);
  std::sort(ranked.begin(), ranked.end(), ranked_before);
  if (ranked.empty()) return 0.0;

  std::vector<bool> gt_used(gts.size(), false);
  std::vector<int> hit(ranked.size(), 0);
  for (size_t d = 0; d < ranked.size(); ++d) {
    int best = -1;
    double best_overlap = 0.0;
    for (size_t g = 0; g < gts.size(); ++g) {
      if (gt_used[g] || gts[g].image_id != ranked[d].image_id) continue;
      const double o = overlap_ratio(ranked[d].box, gts[g].box);
      if (o >= thr && o > best_overlap) {
        best_overlap = o;
        best = static_cast<int>(g);
      }
    }
    if (best >= 0) {
      gt_used[best] = true;
      hit[d] = 1;
    }
  }

  const size_t n = ranked.size();
  auto precision_at = [&](size_t rank) {
    int tp = 0;
    for (size_t k = 0; k <= rank; ++k) tp += hit[k];
    return static_cast<double>(tp) / static_cast<double>(rank + 1);
  };
  auto recall_at = [&](size_t rank) {
    int tp = 0;
    for (size_t k = 0; k <= rank; ++k) tp += hit[k];
    return static_cast<double>(tp) / static_cast<double>(gts.size());
  };

  if (grid101) {
    double sum = 0.0;
    for (int i = 0; i <= 100; ++i) {
      const double r = i / 100.0;
      double best_prec = 0.0;
      for (size_t k = 0; k < n; ++k)
        if (recall_at(k) >= r && precision_at(k) > best_prec)
          best_prec = precision_at(k);
      sum += best_prec;
    }
    return sum / 101.0;
  }

  // Continuous: area under the running precision envelope, rank by rank.
  double area = 0.0;
  double prev_recall = 0.0;
  for (size_t k = 0; k < n; ++k) {
    double env = 0.0;
    for (size_t j = k; j < n; ++j)
      if (precision_at(j) > env) env = precision_at(j);
    area += (recall_at(k) - prev_recall) * env;
    prev_recall = recall_at(k);
  }
  return area;
}

struct SuiteResult {
  std::map<std::string, std::vector<double>> per_class;
  std::vector<double> map_per_threshold;
  double map50_95 = 0.0;
};

inline SuiteResult map_suite(const std::vector<Detection>& dets,
                             const std::vector<GtBox>& gts, bool grid101) {
  SuiteResult result;
  std::set<std::string> labels;
  for (const GtBox& g : gts) labels.insert(g.label);
  std::vector<double> thresholds;
  for (int i = 0; i < 10; ++i) thresholds.push_back((50 + 5 * i) / 100.0);
  for (double thr : thresholds) {
    double sum = 0.0;
    for (const std::string& label : labels) {
      const double ap = class_ap(dets, gts, label, thr, grid101);
      result.per_class[label].push_back(ap);
      sum += ap;
    }
    result.map_per_threshold.push_back(sum / static_cast<double>(labels.size()));
  }
  double total = 0.0;
  for (double v : result.map_per_threshold) total += v;
  result.map50_95 = total / static_cast<double>(result.map_per_threshold.size());
  return result;
}

}  // namespace oracle
