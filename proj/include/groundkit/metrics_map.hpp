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

#include <map>
#include <string>
#include <vector>

#include "groundkit/geometry.hpp"

namespace groundkit {

struct Detection {
  std::string image_id;
  std::string label;
  PixelBox box;
  double confidence = 1.0;  // in [0, 1]
};

struct GtBox {
  std::string image_id;
  std::string label;
  PixelBox box;
};

enum class Interpolation {
  Grid101,     // mean of max precision at recall >= r over the 101-point grid
  Continuous,  // exact area under the precision envelope
};

Interpolation interpolation_from_string(std::string_view s);
const char* to_string(Interpolation interp);

// The ten COCO thresholds 0.50, 0.55, ..., 0.95.
std::vector<double> coco_thresholds();

// Descending confidence; ties broken by box lexicographic order, then image
// id and label, so results are reproducible across runs and schedules.
bool detection_order(const Detection& a, const Detection& b);

struct APResult {
  std::vector<double> thresholds;
  // class -> AP per threshold (same order as `thresholds`); only classes
  // present in the ground truth appear here.
  std::map<std::string, std::vector<double>> per_class;
  std::vector<double> map_per_threshold;
  double map50 = 0.0;
  double map75 = 0.0;
  double map50_95 = 0.0;  // mean of map_per_threshold
  // Detection labels absent from the ground truth; excluded from the mean
  // rather than scored 0 or 1.
  std::vector<std::string> ignored_labels;
};

// Greedy matching for one image and class: each detection (already in
// detection_order) takes the highest-IoU unmatched ground truth with
// IoU >= iou_thr (TP), else it is a FP; each GT matches at most once.
std::vector<bool> match_greedy(const std::vector<Detection>& dets,
                               const std::vector<PixelBox>& gts,
                               double iou_thr);

// flags must be in detection_order. num_gt = 0 yields 0; callers exclude
// the class entirely when there are also no detections.
double average_precision(const std::vector<bool>& flags, std::size_t num_gt,
                         Interpolation interp);

// Per-class AP at every COCO threshold plus the three headline aggregates.
// Throws ValidationError when gts is empty.
APResult map_suite(const std::vector<Detection>& dets,
                   const std::vector<GtBox>& gts,
                   Interpolation interp = Interpolation::Grid101,
                   unsigned workers = 1);

}  // namespace groundkit
