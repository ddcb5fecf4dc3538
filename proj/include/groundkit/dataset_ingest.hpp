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

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "groundkit/box_fusion.hpp"
#include "groundkit/geometry.hpp"
#include "groundkit/knowledge_prompts.hpp"
#include "groundkit/token_codec.hpp"

namespace groundkit {

// One annotated box, or a boxless marker row ("No finding" style) that keeps
// an image present without contributing any abnormality.
struct AnnotationRecord {
  std::string image_id;
  ImageDims dims;
  std::string label;
  std::optional<PixelBox> box;
  std::string annotator;
};

enum class AnnotationFormat { Csv, CocoJson };

AnnotationFormat annotation_format_from_string(std::string_view s);

struct LoadResult {
  std::vector<AnnotationRecord> records;
  std::vector<std::string> rejects;  // malformed rows with line/entry refs
};

// CSV columns (header required, any order): image_id, width, height, label,
// x0, y0, x1, y1, annotator?. Empty coordinate fields mark a boxless row.
// COCO-style JSON: images (id, width, height), annotations (image_id,
// category_id, bbox as x,y,w,h), categories (id, name). Malformed rows land
// in rejects; unreadable files and images without dims raise.
LoadResult load_annotations(const std::string& path, AnnotationFormat format);

enum class Split { Train, Test };
enum class Partition { InDomain, Known, Unknown };

const char* to_string(Split s);
const char* to_string(Partition p);

// One (image, abnormality) pair: the training and evaluation unit.
struct GroundingSample {
  std::string image_id;
  ImageDims dims;
  std::string prompt;
  std::string label;
  std::vector<PixelBox> gt_boxes;   // nonempty
  std::vector<TokenQuad> gt_quads;  // encode of gt_boxes, same length
  Split split = Split::Train;
  Partition partition = Partition::InDomain;
};

struct PairOptions {
  PromptMode mode = PromptMode::LabelOnly;
  const DescriptionTable* descriptions = nullptr;  // required in knowledge mode
  CodecConfig codec;
  unsigned workers = 1;
};

struct BuildResult {
  std::vector<GroundingSample> samples;  // sorted by (image_id, label)
  std::vector<std::string> diagnostics;
};

// Fuses per (image, label), drops boxless markers and images left with no
// abnormality, builds the prompt per mode, and token-encodes the fused
// boxes. Knowledge mode with any label lacking a description is an error
// listing the labels.
BuildResult build_pairs(const std::vector<AnnotationRecord>& records,
                        const FusionConfig& fusion, const PairOptions& opts);

struct SplitSpec {
  double ratio = 0.8;  // train share of images; ignored when lists are given
  std::uint64_t seed = 0;
  // Explicit image-id lists override the ratio. With only one list given the
  // complement goes to the other side; with both given they must cover every
  // image exactly once.
  std::optional<std::vector<std::string>> train_ids;
  std::optional<std::vector<std::string>> test_ids;
};

struct SplitResult {
  std::vector<GroundingSample> train;
  std::vector<GroundingSample> test;
};

// Splits by image so all samples of an image land on the same side.
// Deterministic under a fixed seed.
SplitResult split_samples(std::vector<GroundingSample> samples,
                          const SplitSpec& spec);

struct PartitionResult {
  std::vector<GroundingSample> known;
  std::vector<GroundingSample> unknown;
};

// Labels matching known_classes (case-insensitive, after the alias map) go
// to `known`, everything else to `unknown`.
PartitionResult partition_zero_shot(
    std::vector<GroundingSample> samples,
    const std::vector<std::string>& known_classes,
    const std::map<std::string, std::string>& aliases = {});

// Samples file: one JSON record per line, including token surface forms.
void write_samples(const std::string& path,
                   const std::vector<GroundingSample>& samples);
std::vector<GroundingSample> read_samples(const std::string& path);

// {"alias": "canonical", ...}
std::map<std::string, std::string> load_alias_map(const std::string& path);
// JSON array of names, or {"classes": [...]}
std::vector<std::string> load_class_list(const std::string& path);

}  // namespace groundkit
