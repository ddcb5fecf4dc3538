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
#include "groundkit/box_fusion.hpp"

#include <algorithm>
#include <cmath>

#include "groundkit/util.hpp"

namespace groundkit {
namespace {

struct Cluster {
  std::string label;
  // Score-weighted coordinate sums; falls back to the unweighted mean when
  // every member score is zero.
  double sx0 = 0, sy0 = 0, sx1 = 0, sy1 = 0;
  double ux0 = 0, uy0 = 0, ux1 = 0, uy1 = 0;
  double weight = 0;
  double score_sum = 0;
  double score_max = 0;
  size_t count = 0;
  PixelBox fused;

  void add(const ScoredBox& b) {
    sx0 += b.score * b.box.x0;
    sy0 += b.score * b.box.y0;
    sx1 += b.score * b.box.x1;
    sy1 += b.score * b.box.y1;
    ux0 += b.box.x0;
    uy0 += b.box.y0;
    ux1 += b.box.x1;
    uy1 += b.box.y1;
    weight += b.score;
    score_sum += b.score;
    score_max = std::max(score_max, b.score);
    ++count;
    if (count == 1) {
      // exact singleton identity, no (s*x)/s rounding
      fused = b.box;
    } else if (weight > 0.0) {
      fused = PixelBox{sx0 / weight, sy0 / weight, sx1 / weight, sy1 / weight};
    } else {
      const double n = static_cast<double>(count);
      fused = PixelBox{ux0 / n, uy0 / n, ux1 / n, uy1 / n};
    }
  }

  ScoredBox result(ScoreMode mode) const {
    double score = mode == ScoreMode::Max
                       ? score_max
                       : score_sum / static_cast<double>(count);
    return ScoredBox{fused, label, score, ""};
  }
};

bool candidate_order(const ScoredBox& a, const ScoredBox& b) {
  if (a.score != b.score) return a.score > b.score;
  if (a.label != b.label) return a.label < b.label;
  if (a.box != b.box) return box_less(a.box, b.box);
  return a.source < b.source;
}

bool output_order(const ScoredBox& a, const ScoredBox& b) {
  if (a.score != b.score) return a.score > b.score;
  if (a.label != b.label) return a.label < b.label;
  return box_less(a.box, b.box);
}

std::string describe(const ScoredBox& b) {
  std::string s = "label '" + b.label + "' box (" + format_compact(b.box.x0) +
                  "," + format_compact(b.box.y0) + "," +
                  format_compact(b.box.x1) + "," + format_compact(b.box.y1) +
                  ")";
  if (!b.source.empty()) s += " source '" + b.source + "'";
  return s;
}

}  // namespace

FusionResult fuse(const std::vector<ScoredBox>& boxes,
                  const FusionConfig& cfg) {
  if (!(cfg.iou_threshold > 0.0) || cfg.iou_threshold > 1.0)
    throw ConfigError("fusion iou_threshold must be in (0, 1], got " +
                      format_compact(cfg.iou_threshold));

  FusionResult result;
  std::vector<ScoredBox> candidates;
  candidates.reserve(boxes.size());
  for (const ScoredBox& b : boxes) {
    if (!b.box.finite() || !std::isfinite(b.score)) {
      result.diagnostics.push_back("rejected non-finite input: " + describe(b));
      continue;
    }
    if (b.label.empty()) {
      result.diagnostics.push_back("rejected box with empty label: " +
                                   describe(b));
      continue;
    }
    if (b.score < 0.0 || b.score > 1.0) {
      result.diagnostics.push_back("rejected score outside [0,1]: " +
                                   describe(b));
      continue;
    }
    if (!b.box.corners_ordered()) {
      result.diagnostics.push_back("rejected inverted box: " + describe(b));
      continue;
    }
    if (cfg.skip_degenerate && b.box.area() <= 0.0) {
      result.diagnostics.push_back("dropped degenerate box: " + describe(b));
      continue;
    }
    candidates.push_back(b);
  }

  std::sort(candidates.begin(), candidates.end(), candidate_order);

  std::vector<Cluster> clusters;
  for (const ScoredBox& b : candidates) {
    Cluster* target = nullptr;
    for (Cluster& c : clusters) {
      if (c.label != b.label) continue;
      if (iou(c.fused, b.box) >= cfg.iou_threshold) {
        target = &c;
        break;
      }
    }
    if (!target) {
      clusters.emplace_back();
      target = &clusters.back();
      target->label = b.label;
    }
    target->add(b);
  }

  result.boxes.reserve(clusters.size());
  for (const Cluster& c : clusters) result.boxes.push_back(c.result(cfg.score_mode));
  std::sort(result.boxes.begin(), result.boxes.end(), output_order);
  return result;
}

std::map<std::string, FusionResult> fuse_annotations(
    const std::map<std::string, std::vector<ScoredBox>>& boxes_by_image,
    const FusionConfig& cfg) {
  std::map<std::string, FusionResult> out;
  for (const auto& [image_id, boxes] : boxes_by_image) {
    FusionResult fused = fuse(boxes, cfg);
    for (std::string& d : fused.diagnostics) d = image_id + ": " + d;
    out.emplace(image_id, std::move(fused));
  }
  return out;
}

}  // namespace groundkit
