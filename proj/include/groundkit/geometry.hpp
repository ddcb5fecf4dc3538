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

#include <string>
#include <vector>

namespace groundkit {

struct ImageDims {
  int width = 0;   // pixels
  int height = 0;  // pixels

  bool valid() const { return width >= 1 && height >= 1; }
};

// Axis-aligned box in continuous pixel coordinates, corners (x0,y0)-(x1,y1).
// Boxes are closed intervals: width = x1 - x0, no "+1 pixel" convention.
// Zero-area boxes are legal inputs; IoU treats them via the zero-union rule.
struct PixelBox {
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 0.0;
  double y1 = 0.0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double area() const { return width() * height(); }
  double center_x() const { return (x0 + x1) / 2.0; }
  double center_y() const { return (y0 + y1) / 2.0; }
  bool corners_ordered() const { return x0 <= x1 && y0 <= y1; }
  bool finite() const;

  friend bool operator==(const PixelBox&, const PixelBox&) = default;
};

// Lexicographic (x0, y0, x1, y1) order; the deterministic tie-breaker used
// throughout fusion and metrics.
bool box_less(const PixelBox& a, const PixelBox& b);

// Intersection over union. Returns 0 when the union has zero area.
double iou(const PixelBox& a, const PixelBox& b);

enum class BoxIssue {
  InvertedX,
  InvertedY,
  OutOfBoundsX,
  OutOfBoundsY,
  NonFinite,
};

std::string to_string(BoxIssue issue);

struct BoxValidity {
  std::vector<BoxIssue> issues;

  bool valid() const { return issues.empty(); }
  std::string describe() const;
};

// Diagnostics only; never throws and never mutates the box.
BoxValidity validate_box(const PixelBox& b, const ImageDims& dims);

}  // namespace groundkit
