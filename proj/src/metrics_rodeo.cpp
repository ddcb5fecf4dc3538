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
#include "groundkit/metrics_rodeo.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "groundkit/assignment.hpp"
#include "groundkit/util.hpp"

namespace groundkit {
namespace {

double enclosing_area(const PixelBox& a, const PixelBox& b) {
  const double w = std::max(a.x1, b.x1) - std::min(a.x0, b.x0);
  const double h = std::max(a.y1, b.y1) - std::min(a.y0, b.y0);
  return w * h;
}

// exp(-d / sigma), d = center distance over the GT diagonal. A degenerate
// GT (zero diagonal) scores 1 only for an exactly coincident center.
double localization_affinity(const PixelBox& pred, const PixelBox& gt,
                             double sigma) {
  const double dx = pred.center_x() - gt.center_x();
  const double dy = pred.center_y() - gt.center_y();
  const double dist = std::sqrt(dx * dx + dy * dy);
  const double diag = std::sqrt(gt.width() * gt.width() +
                                gt.height() * gt.height());
  if (diag <= 0.0) return dist == 0.0 ? 1.0 : 0.0;
  return std::exp(-(dist / diag) / sigma);
}

// IoU after translating the prediction's center onto the GT's center; a
// pure function of the two width/height pairs.
double shape_affinity(const PixelBox& pred, const PixelBox& gt) {
  const double iw = std::min(pred.width(), gt.width());
  const double ih = std::min(pred.height(), gt.height());
  const double inter = iw * ih;
  const double uni = pred.area() + gt.area() - inter;
  if (uni <= 0.0) return 0.0;
  return inter / uni;
}

struct Accumulator {
  double loc_sum = 0.0;
  double shape_sum = 0.0;
  double cls_sum = 0.0;
  std::size_t pairs = 0;
  std::size_t preds = 0;
  std::size_t gts = 0;

  void merge(const Accumulator& o) {
    loc_sum += o.loc_sum;
    shape_sum += o.shape_sum;
    cls_sum += o.cls_sum;
    pairs += o.pairs;
    preds += o.preds;
    gts += o.gts;
  }
};

Accumulator accumulate_image(const std::vector<Detection>& preds,
                             const std::vector<GtBox>& gts,
                             const RodeoConfig& cfg) {
  Accumulator acc;
  acc.preds = preds.size();
  acc.gts = gts.size();
  const MatchResult match = match_hungarian(preds, gts, cfg);
  for (const MatchedPair& pair : match.pairs) {
    const Detection& p = preds[pair.pred_index];
    const GtBox& g = gts[pair.gt_index];
    acc.loc_sum += localization_affinity(p.box, g.box, cfg.sigma);
    acc.shape_sum += shape_affinity(p.box, g.box);
    acc.cls_sum += p.label == g.label ? 1.0 : 0.0;
    ++acc.pairs;
  }
  return acc;
}

// Sub-scores in [0, 1]: 2 * affinity_sum / (preds + gts). Algebraically the
// mean pair affinity times the matching rate 2*pairs / (preds + gts).
struct UnitScores {
  double loc = 0.0, shape = 0.0, cls = 0.0;
};

UnitScores unit_scores(const Accumulator& acc) {
  UnitScores s;
  const double denom = static_cast<double>(acc.preds + acc.gts);
  if (denom <= 0.0) return s;
  s.loc = 2.0 * acc.loc_sum / denom;
  s.shape = 2.0 * acc.shape_sum / denom;
  s.cls = 2.0 * acc.cls_sum / denom;
  return s;
}

RodeoScores finalize(const UnitScores& unit, const Accumulator& acc) {
  RodeoScores out;
  out.r_loc = 100.0 * unit.loc;
  out.r_shape = 100.0 * unit.shape;
  out.r_cls = 100.0 * unit.cls;
  // Product form keeps the perfect case at exactly 100.
  if (unit.loc > 0.0 && unit.shape > 0.0 && unit.cls > 0.0) {
    const double a = unit.loc, b = unit.shape, c = unit.cls;
    out.r_total = 100.0 * (3.0 * a * b * c) / (a * b + b * c + c * a);
  }
  out.matched_pairs = acc.pairs;
  out.unmatched_preds = acc.preds - acc.pairs;
  out.unmatched_gts = acc.gts - acc.pairs;
  return out;
}

}  // namespace

double matching_affinity(const PixelBox& a, const PixelBox& b) {
  const double overlap = iou(a, b);
  const double iw = std::min(a.x1, b.x1) - std::max(a.x0, b.x0);
  const double ih = std::min(a.y1, b.y1) - std::max(a.y0, b.y0);
  const double inter = (iw > 0.0 && ih > 0.0) ? iw * ih : 0.0;
  const double uni = a.area() + b.area() - inter;
  const double enclosing = enclosing_area(a, b);
  double giou = overlap;
  if (enclosing > 0.0) giou = overlap - (enclosing - uni) / enclosing;
  return std::clamp(giou, 0.0, 1.0);
}

MatchResult match_hungarian(const std::vector<Detection>& preds,
                            const std::vector<GtBox>& gts,
                            const RodeoConfig& cfg) {
  MatchResult result;
  const int p = static_cast<int>(preds.size());
  const int g = static_cast<int>(gts.size());
  if (p == 0 || g == 0) {
    for (int i = 0; i < p; ++i) result.unmatched_preds.push_back(i);
    for (int j = 0; j < g; ++j) result.unmatched_gts.push_back(j);
    return result;
  }

  // (p+g)-square matrix: real-real pairs cost 1 - affinity, leaving a real
  // box unmatched costs 0.5 on each side, dummy-dummy is free. A pair is
  // therefore preferred exactly when its affinity is positive.
  const int n = p + g;
  std::vector<std::vector<double>> cost(n, std::vector<double>(n, 0.0));
  std::vector<std::vector<double>> affinity(p, std::vector<double>(g, 0.0));
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < g; ++j) {
      affinity[i][j] = matching_affinity(preds[i].box, gts[j].box);
      cost[i][j] = 1.0 - affinity[i][j];
    }
  for (int i = 0; i < p; ++i)
    for (int j = g; j < n; ++j) cost[i][j] = 0.5;
  for (int i = p; i < n; ++i)
    for (int j = 0; j < g; ++j) cost[i][j] = 0.5;

  const std::vector<int> assignment = solve_assignment(cost);
  std::vector<bool> pred_matched(p, false), gt_matched(g, false);
  for (int i = 0; i < p; ++i) {
    const int j = assignment[i];
    if (j < 0 || j >= g) continue;
    if (affinity[i][j] <= cfg.affinity_floor) continue;  // discarded
    result.pairs.push_back(MatchedPair{i, j, affinity[i][j]});
    pred_matched[i] = true;
    gt_matched[j] = true;
  }
  for (int i = 0; i < p; ++i)
    if (!pred_matched[i]) result.unmatched_preds.push_back(i);
  for (int j = 0; j < g; ++j)
    if (!gt_matched[j]) result.unmatched_gts.push_back(j);
  return result;
}

RodeoScores rodeo(const std::vector<Detection>& preds,
                  const std::vector<GtBox>& gts, const RodeoConfig& cfg,
                  unsigned workers) {
  if (gts.empty())
    throw ValidationError("ground truth is empty: nothing to evaluate");

  std::set<std::string> ids;
  for (const Detection& d : preds) ids.insert(d.image_id);
  for (const GtBox& g : gts) ids.insert(g.image_id);
  std::vector<std::string> images(ids.begin(), ids.end());

  std::map<std::string, std::vector<Detection>> preds_by_image;
  std::map<std::string, std::vector<GtBox>> gts_by_image;
  for (const Detection& d : preds) preds_by_image[d.image_id].push_back(d);
  for (const GtBox& g : gts) gts_by_image[g.image_id].push_back(g);

  std::vector<Accumulator> per_image(images.size());
  static const std::vector<Detection> kNoPreds;
  static const std::vector<GtBox> kNoGts;
  parallel_for(images.size(), workers, [&](size_t i) {
    auto pit = preds_by_image.find(images[i]);
    auto git = gts_by_image.find(images[i]);
    per_image[i] = accumulate_image(
        pit == preds_by_image.end() ? kNoPreds : pit->second,
        git == gts_by_image.end() ? kNoGts : git->second, cfg);
  });

  Accumulator total;
  for (const Accumulator& acc : per_image) total.merge(acc);

  if (!cfg.macro_average) return finalize(unit_scores(total), total);

  // Macro: average per-image sub-scores over images that have any boxes.
  UnitScores mean;
  size_t counted = 0;
  for (const Accumulator& acc : per_image) {
    if (acc.preds + acc.gts == 0) continue;
    const UnitScores s = unit_scores(acc);
    mean.loc += s.loc;
    mean.shape += s.shape;
    mean.cls += s.cls;
    ++counted;
  }
  if (counted > 0) {
    mean.loc /= static_cast<double>(counted);
    mean.shape /= static_cast<double>(counted);
    mean.cls /= static_cast<double>(counted);
  }
  return finalize(mean, total);
}

PerClassRodeo rodeo_per_class(const std::vector<Detection>& preds,
                              const std::vector<GtBox>& gts,
                              const RodeoConfig& cfg, unsigned workers) {
  if (gts.empty())
    throw ValidationError("ground truth is empty: nothing to evaluate");

  PerClassRodeo out;
  std::set<std::string> gt_classes;
  for (const GtBox& g : gts) gt_classes.insert(g.label);
  std::set<std::string> pred_only;
  for (const Detection& d : preds)
    if (!gt_classes.count(d.label)) pred_only.insert(d.label);
  for (const std::string& label : pred_only)
    out.notes.push_back("class '" + label + "': no ground truth, skipped");
  out.notes.push_back(
      "per-class r_cls degenerates to the matching rate (labels are equal "
      "within a class)");

  for (const std::string& label : gt_classes) {
    std::vector<Detection> class_preds;
    std::vector<GtBox> class_gts;
    for (const Detection& d : preds)
      if (d.label == label) class_preds.push_back(d);
    for (const GtBox& g : gts)
      if (g.label == label) class_gts.push_back(g);
    out.per_class[label] = rodeo(class_preds, class_gts, cfg, workers);
  }
  return out;
}

}  // namespace groundkit
