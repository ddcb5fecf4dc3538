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
#include "groundkit/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace groundkit {

bool PixelBox::finite() const {
  return std::isfinite(x0) && std::isfinite(y0) && std::isfinite(x1) &&
         std::isfinite(y1);
}

bool box_less(const PixelBox& a, const PixelBox& b) {
  if (a.x0 != b.x0) return a.x0 < b.x0;
  if (a.y0 != b.y0) return a.y0 < b.y0;
  if (a.x1 != b.x1) return a.x1 < b.x1;
  return a.y1 < b.y1;
}

double iou(const PixelBox& a, const PixelBox& b) {
  const double iw = std::min(a.x1, b.x1) - std::max(a.x0, b.x0);
  const double ih = std::min(a.y1, b.y1) - std::max(a.y0, b.y0);
  if (iw <= 0.0 || ih <= 0.0) return 0.0;
  const double inter = iw * ih;
  const double uni = a.area() + b.area() - inter;
  if (uni <= 0.0) return 0.0;
  return inter / uni;
}

std::string to_string(BoxIssue issue) {
  switch (issue) {
    case BoxIssue::InvertedX: return "inverted-x";
    case BoxIssue::InvertedY: return "inverted-y";
    case BoxIssue::OutOfBoundsX: return "out-of-bounds-x";
    case BoxIssue::OutOfBoundsY: return "out-of-bounds-y";
    case BoxIssue::NonFinite: return "non-finite";
  }
  return "unknown";
}

std::string BoxValidity::describe() const {
  if (issues.empty()) return "valid";
  std::string out;
  for (size_t i = 0; i < issues.size(); ++i) {
    if (i) out += ", ";
    out += to_string(issues[i]);
  }
  return out;
}

BoxValidity validate_box(const PixelBox& b, const ImageDims& dims) {
  BoxValidity report;
  if (!b.finite()) {
    report.issues.push_back(BoxIssue::NonFinite);
    return report;
  }
  if (b.x0 > b.x1) report.issues.push_back(BoxIssue::InvertedX);
  if (b.y0 > b.y1) report.issues.push_back(BoxIssue::InvertedY);
  const double w = static_cast<double>(dims.width);
  const double h = static_cast<double>(dims.height);
  if (b.x0 < 0.0 || b.x1 < 0.0 || b.x0 > w || b.x1 > w)
    report.issues.push_back(BoxIssue::OutOfBoundsX);
  if (b.y0 < 0.0 || b.y1 < 0.0 || b.y0 > h || b.y1 > h)
    report.issues.push_back(BoxIssue::OutOfBoundsY);
  return report;
}

}  // namespace groundkit
