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
#include "groundkit/eval_io.hpp"

#include <charconv>
#include <sstream>

namespace groundkit {
namespace {

bool looks_like_jsonl(const std::string& text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{';
  }
  return false;
}

std::optional<double> parse_number(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  double value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

struct Row {
  std::string image_id;
  std::string label;
  double confidence = 1.0;
  PixelBox box;
};

std::vector<Row> load_csv_rows(const std::string& path,
                               const std::map<std::string, ImageDims>& dims,
                               std::optional<ImageDims> fallback_dims,
                               const CodecConfig& codec) {
  const std::string text = read_text_file(path);
  std::istringstream in(text);
  std::string line;
  std::vector<Row> rows;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view stripped = trim(line);
    if (stripped.empty()) continue;
    const std::vector<std::string> fields = parse_csv_line(stripped);
    if (lineno == 1 && !fields.empty() && to_lower(trim(fields[0])) == "image_id")
      continue;  // header
    auto fail = [&](const std::string& why) -> ValidationError {
      return ValidationError(path + " line " + std::to_string(lineno) + ": " + why);
    };
    if (fields.size() != 6 && fields.size() != 7)
      throw fail("expected 6 or 7 fields, got " + std::to_string(fields.size()));
    Row row;
    row.image_id = trim(fields[0]);
    row.label = trim(fields[1]);
    if (row.image_id.empty() || row.label.empty())
      throw fail("empty image_id or label");
    size_t coord_start = 2;
    if (fields.size() == 7) {
      auto conf = parse_number(fields[2]);
      if (!conf || *conf < 0.0 || *conf > 1.0)
        throw fail("confidence must be a number in [0, 1]");
      row.confidence = *conf;
      coord_start = 3;
    }
    const bool token_mode = trim(fields[coord_start]).starts_with("<");
    if (token_mode) {
      int bins[4];
      for (int i = 0; i < 4; ++i) {
        auto bin = parse_loc_token(trim(fields[coord_start + i]), codec);
        if (!bin) throw fail("bad location token '" + fields[coord_start + i] + "'");
        bins[i] = *bin;
      }
      ImageDims box_dims;
      auto it = dims.find(row.image_id);
      if (it != dims.end()) box_dims = it->second;
      else if (fallback_dims) box_dims = *fallback_dims;
      else
        throw fail("token coordinates need image dims for '" + row.image_id +
                   "' (provide a samples-file ground truth or --dims)");
      TokenQuad quad{LocToken{bins[0]}, LocToken{bins[1]}, LocToken{bins[2]},
                     LocToken{bins[3]}};
      row.box = decode_quad(quad, box_dims, DecodePolicy::Repair, codec).box;
    } else {
      double coords[4];
      for (int i = 0; i < 4; ++i) {
        auto v = parse_number(fields[coord_start + i]);
        if (!v) throw fail("bad coordinate '" + fields[coord_start + i] + "'");
        coords[i] = *v;
      }
      row.box = PixelBox{coords[0], coords[1], coords[2], coords[3]};
      if (!row.box.corners_ordered() || !row.box.finite())
        throw fail("invalid box corners");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

GroundTruthFile load_ground_truth(const std::string& path,
                                  std::optional<ImageDims> fallback_dims,
                                  const CodecConfig& codec) {
  GroundTruthFile out;
  const std::string text = read_text_file(path);
  if (looks_like_jsonl(text)) {
    for (const GroundingSample& s : read_samples(path)) {
      out.dims[s.image_id] = s.dims;
      for (const PixelBox& b : s.gt_boxes)
        out.boxes.push_back(GtBox{s.image_id, s.label, b});
    }
    return out;
  }
  for (const Row& row : load_csv_rows(path, {}, fallback_dims, codec))
    out.boxes.push_back(GtBox{row.image_id, row.label, row.box});
  if (fallback_dims)
    for (const GtBox& b : out.boxes) out.dims.emplace(b.image_id, *fallback_dims);
  return out;
}

std::vector<Detection> load_predictions(
    const std::string& path,
    const std::map<std::string, ImageDims>& dims_by_image,
    std::optional<ImageDims> fallback_dims, const CodecConfig& codec) {
  std::vector<Detection> dets;
  const std::string text = read_text_file(path);
  if (looks_like_jsonl(text)) {
    for (const GroundingSample& s : read_samples(path))
      for (const PixelBox& b : s.gt_boxes)
        dets.push_back(Detection{s.image_id, s.label, b, 1.0});
    return dets;
  }
  for (const Row& row : load_csv_rows(path, dims_by_image, fallback_dims, codec))
    dets.push_back(Detection{row.image_id, row.label, row.box, row.confidence});
  return dets;
}

}  // namespace groundkit
