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
#include "groundkit/metrics_map.hpp"

#include <algorithm>
#include <set>

#include "groundkit/util.hpp"

namespace groundkit {

Interpolation interpolation_from_string(std::string_view s) {
  if (s == "101pt") return Interpolation::Grid101;
  if (s == "cont") return Interpolation::Continuous;
  throw ConfigError("unknown interpolation: '" + std::string(s) +
                    "' (expected 101pt or cont)");
}

const char* to_string(Interpolation interp) {
  return interp == Interpolation::Grid101 ? "101pt" : "cont";
}

std::vector<double> coco_thresholds() {
  std::vector<double> out;
  for (int i = 0; i < 10; ++i) out.push_back((50 + 5 * i) / 100.0);
  return out;
}

bool detection_order(const Detection& a, const Detection& b) {
  if (a.confidence != b.confidence) return a.confidence > b.confidence;
  if (a.box != b.box) return box_less(a.box, b.box);
  if (a.image_id != b.image_id) return a.image_id < b.image_id;
  return a.label < b.label;
}

std::vector<bool> match_greedy(const std::vector<Detection>& dets,
                               const std::vector<PixelBox>& gts,
                               double iou_thr) {
  std::vector<bool> flags(dets.size(), false);
  std::vector<bool> taken(gts.size(), false);
  for (size_t d = 0; d < dets.size(); ++d) {
    double best = 0.0;
    size_t best_gt = gts.size();
    for (size_t g = 0; g < gts.size(); ++g) {
      if (taken[g]) continue;
      const double overlap = iou(dets[d].box, gts[g]);
      if (overlap >= iou_thr && overlap > best) {
        best = overlap;
        best_gt = g;
      }
    }
    if (best_gt < gts.size()) {
      taken[best_gt] = true;
      flags[d] = true;
    }
  }
  return flags;
}

double average_precision(const std::vector<bool>& flags, std::size_t num_gt,
                         Interpolation interp) {
  if (num_gt == 0 || flags.empty()) return 0.0;
  const size_t n = flags.size();
  std::vector<double> precision(n), recall(n);
  size_t tp = 0;
  for (size_t k = 0; k < n; ++k) {
    if (flags[k]) ++tp;
    precision[k] = static_cast<double>(tp) / static_cast<double>(k + 1);
    recall[k] = static_cast<double>(tp) / static_cast<double>(num_gt);
  }
  // Envelope: best precision achievable at recall >= recall[k].
  std::vector<double> envelope(n);
  double running = 0.0;
  for (size_t k = n; k-- > 0;) {
    running = std::max(running, precision[k]);
    envelope[k] = running;
  }

  if (interp == Interpolation::Continuous) {
    double area = 0.0;
    double prev_recall = 0.0;
    for (size_t k = 0; k < n; ++k) {
      area += (recall[k] - prev_recall) * envelope[k];
      prev_recall = recall[k];
    }
    return area;
  }

  // Recall is nondecreasing, so one forward pointer serves the whole grid.
  double sum = 0.0;
  size_t k = 0;
  for (int i = 0; i <= 100; ++i) {
    const double r = i / 100.0;
    while (k < n && recall[k] < r) ++k;
    if (k < n) sum += envelope[k];
  }
  return sum / 101.0;
}

APResult map_suite(const std::vector<Detection>& dets,
                   const std::vector<GtBox>& gts, Interpolation interp,
                   unsigned workers) {
  if (gts.empty())
    throw ValidationError("ground truth is empty: nothing to evaluate");

  APResult result;
  result.thresholds = coco_thresholds();

  struct ClassData {
    std::string label;
    std::map<std::string, std::vector<PixelBox>> gts_by_image;
    size_t num_gt = 0;
    std::vector<Detection> dets;  // in detection_order
  };
  std::map<std::string, ClassData> classes;
  for (const GtBox& g : gts) {
    ClassData& c = classes[g.label];
    c.label = g.label;
    c.gts_by_image[g.image_id].push_back(g.box);
    ++c.num_gt;
  }
  std::set<std::string> ignored;
  for (const Detection& d : dets) {
    auto it = classes.find(d.label);
    if (it == classes.end()) {
      ignored.insert(d.label);
      continue;
    }
    it->second.dets.push_back(d);
  }
  result.ignored_labels.assign(ignored.begin(), ignored.end());

  std::vector<ClassData*> order;
  std::vector<std::vector<double>*> ap_slots;
  for (auto& [label, c] : classes) {
    std::sort(c.dets.begin(), c.dets.end(), detection_order);
    auto& slot = result.per_class[label];
    slot.assign(result.thresholds.size(), 0.0);
    order.push_back(&c);
    ap_slots.push_back(&slot);
  }

  const size_t jobs = order.size() * result.thresholds.size();
  parallel_for(jobs, workers, [&](size_t job) {
    ClassData& c = *order[job / result.thresholds.size()];
    const size_t t = job % result.thresholds.size();
    const double thr = result.thresholds[t];

    // Group this class's detections by image, keeping global order within
    // each image so per-image greedy matching lines up with the pooled
    // confidence ranking.
    std::map<std::string, std::vector<Detection>> dets_by_image;
    for (const Detection& d : c.dets) dets_by_image[d.image_id].push_back(d);

    std::map<std::string, std::vector<bool>> flags_by_image;
    for (auto& [image_id, image_dets] : dets_by_image) {
      static const std::vector<PixelBox> kNoGts;
      auto git = c.gts_by_image.find(image_id);
      const std::vector<PixelBox>& image_gts =
          git == c.gts_by_image.end() ? kNoGts : git->second;
      flags_by_image[image_id] = match_greedy(image_dets, image_gts, thr);
    }
    std::vector<bool> flags;
    flags.reserve(c.dets.size());
    std::map<std::string, size_t> cursor;
    for (const Detection& d : c.dets)
      flags.push_back(flags_by_image[d.image_id][cursor[d.image_id]++]);

    (*ap_slots[job / result.thresholds.size()])[t] =
        average_precision(flags, c.num_gt, interp);
  });

  result.map_per_threshold.assign(result.thresholds.size(), 0.0);
  for (size_t t = 0; t < result.thresholds.size(); ++t) {
    double sum = 0.0;
    for (const auto& [label, aps] : result.per_class) sum += aps[t];
    result.map_per_threshold[t] = sum / static_cast<double>(result.per_class.size());
  }
  double total = 0.0;
  for (double v : result.map_per_threshold) total += v;
  result.map50 = result.map_per_threshold[0];
  result.map75 = result.map_per_threshold[5];
  result.map50_95 = total / static_cast<double>(result.map_per_threshold.size());
  return result;
}

}  // namespace groundkit
