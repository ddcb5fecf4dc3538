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

#include "groundkit/metrics_map.hpp"

namespace groundkit {

// Robust detection outcome. Predictions and ground truths are paired by a
// minimum-cost bipartite matching on spatial affinity alone (labels are
// judged by r_cls, never by the matcher). Per matched pair:
//   localization  exp(-d / sigma), d = center distance / GT box diagonal
//   shape         IoU after translating the prediction onto the GT center
//   classification 1 when labels match, else 0
// Each sub-score is the mean pair affinity times the matching rate
// 2*pairs / (preds + gts), so unmatched boxes on either side penalize
// everything; the total is the harmonic mean of the three sub-scores.
// All scores are scaled to [0, 100].
struct RodeoConfig {
  double sigma = 1.0;
  // Matched pairs whose clamped generalized IoU is <= this floor are
  // discarded as unmatched.
  double affinity_floor = 0.0;
  // Micro (default): pool pair affinities and counts dataset-wide, then
  // score once. Macro: score each image and average the per-image scores.
  bool macro_average = false;
};

struct RodeoScores {
  double r_loc = 0.0;
  double r_shape = 0.0;
  double r_cls = 0.0;
  double r_total = 0.0;
  std::size_t matched_pairs = 0;
  std::size_t unmatched_preds = 0;
  std::size_t unmatched_gts = 0;
};

struct MatchedPair {
  int pred_index = -1;
  int gt_index = -1;
  double affinity = 0.0;  // clamped generalized IoU used for matching
};

struct MatchResult {
  std::vector<MatchedPair> pairs;
  std::vector<int> unmatched_preds;
  std::vector<int> unmatched_gts;
};

// GIoU clamped to [0, 1]: positive only for genuinely overlapping boxes.
double matching_affinity(const PixelBox& a, const PixelBox& b);

// One image. Minimum-cost perfect matching on the bipartite graph padded
// with dummy nodes (pair cost 1 - affinity, dummy cost 0.5 per unmatched
// real box); pairs at or below the affinity floor are discarded.
MatchResult match_hungarian(const std::vector<Detection>& preds,
                            const std::vector<GtBox>& gts,
                            const RodeoConfig& cfg = {});

// Dataset-level scores. Throws ValidationError on empty ground truth; empty
// predictions yield all-zero scores.
RodeoScores rodeo(const std::vector<Detection>& preds,
                  const std::vector<GtBox>& gts, const RodeoConfig& cfg = {},
                  unsigned workers = 1);

struct PerClassRodeo {
  std::map<std::string, RodeoScores> per_class;
  std::vector<std::string> notes;
};

// rodeo() restricted to each ground-truth class independently. Within one
// class r_cls degenerates to the matching rate, which is flagged in notes;
// prediction-only classes are skipped with a note.
PerClassRodeo rodeo_per_class(const std::vector<Detection>& preds,
                              const std::vector<GtBox>& gts,
                              const RodeoConfig& cfg = {},
                              unsigned workers = 1);

}  // namespace groundkit
