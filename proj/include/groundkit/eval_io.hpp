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
#include <optional>
#include <string>
#include <vector>

#include "groundkit/dataset_ingest.hpp"
#include "groundkit/metrics_map.hpp"

namespace groundkit {

// Box files come in two shapes, auto-detected per file:
//  - samples JSONL (lines starting with '{'), as written by the builder;
//  - CSV lines image_id,label[,confidence],c1,c2,c3,c4 where the four
//    coordinates are either pixel numbers or "<loc_K>" token forms
//    (token rows need image dims: from a samples file or fallback dims).
// A header line starting with "image_id" is skipped.

struct GroundTruthFile {
  std::vector<GtBox> boxes;
  std::map<std::string, ImageDims> dims;  // per image, when known
};

GroundTruthFile load_ground_truth(const std::string& path,
                                  std::optional<ImageDims> fallback_dims,
                                  const CodecConfig& codec);

// Samples files yield one detection per ground-truth box at confidence 1.0.
std::vector<Detection> load_predictions(
    const std::string& path,
    const std::map<std::string, ImageDims>& dims_by_image,
    std::optional<ImageDims> fallback_dims, const CodecConfig& codec);

}  // namespace groundkit
