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

// One labeled, confidence-weighted box. Annotator ground truth carries no
// confidence, so score defaults to 1.0 (uniform weights).
struct ScoredBox {
  PixelBox box;
  std::string label;
  double score = 1.0;
  std::string source;  // annotator or model id, optional

  friend bool operator==(const ScoredBox&, const ScoredBox&) = default;
};

enum class ScoreMode { Mean, Max };

struct FusionConfig {
  double iou_threshold = 0.55;  // must be in (0, 1]
  ScoreMode score_mode = ScoreMode::Mean;
  bool skip_degenerate = true;  // drop zero-area inputs with a diagnostic
};

struct FusionResult {
  std::vector<ScoredBox> boxes;
  std::vector<std::string> diagnostics;
};

// Weighted box fusion over same-label boxes. Boxes are taken in descending
// score order; each joins the first cluster whose running fused box reaches
// the IoU threshold, else seeds a new cluster. Fused coordinates are the
// score-weighted average of members; the fused score is the mean or max of
// member scores per cfg.score_mode. Output is sorted by descending fused
// score, ties by label then coordinates, so results are order-independent.
// Invalid inputs (NaN, empty label, score outside [0,1]) are rejected with
// a diagnostic rather than an error.
FusionResult fuse(const std::vector<ScoredBox>& boxes,
                  const FusionConfig& cfg = {});

// fuse() per image; diagnostics gain image-id context.
std::map<std::string, FusionResult> fuse_annotations(
    const std::map<std::string, std::vector<ScoredBox>>& boxes_by_image,
    const FusionConfig& cfg = {});

}  // namespace groundkit
