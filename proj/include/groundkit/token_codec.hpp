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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "groundkit/geometry.hpp"
#include "groundkit/util.hpp"

namespace groundkit {

// Anything wrong with tokens or coordinates during encode/decode/parse.
class TokenError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

enum class Rounding {
  HalfAwayFromZero,  // default quantizer
  HalfToEven,
};

enum class DecodePolicy {
  Strict,  // any anomaly raises TokenError; for dataset-encoding paths
  Repair,  // anomalies are skipped or fixed and reported as diagnostics
};

struct CodecConfig {
  // Highest bin index; vocabulary size is max_bin + 1 entries. The default
  // keeps both endpoints of the normalized range representable.
  int max_bin = 1000;
  Rounding rounding = Rounding::HalfAwayFromZero;
};

// One quantized coordinate. Surface form "<loc_K>", K decimal without
// leading zeros; that text format is a bit-exact contract for emit and parse.
struct LocToken {
  int bin = 0;

  std::string surface_form() const;
  friend bool operator==(const LocToken&, const LocToken&) = default;
};

// Throws TokenError when bin is outside [0, cfg.max_bin].
LocToken make_loc_token(int bin, const CodecConfig& cfg = {});

// Accepts "<loc_K>" and bare integers "K". Returns nullopt for anything else
// (bad shape, leading zeros, out-of-range values).
std::optional<int> parse_loc_token(std::string_view token,
                                   const CodecConfig& cfg = {});

// Four tokens for one box: top-left then bottom-right corner.
struct TokenQuad {
  LocToken x0, y0, x1, y1;

  bool canonical() const { return x0.bin <= x1.bin && y0.bin <= y1.bin; }
  // "<loc_a> <loc_b> <loc_c> <loc_d>"
  std::string surface_form() const;
  friend bool operator==(const TokenQuad&, const TokenQuad&) = default;
};

// bin = round((pixel / extent) * max_bin), clamped to [0, max_bin].
// Throws TokenError when pixel is outside [0, extent], naming `coord_name`.
LocToken encode_coord(double pixel, int extent, const CodecConfig& cfg = {},
                      std::string_view coord_name = "coordinate");

// Requires b valid for dims (use validate_box upstream). x coordinates use
// width, y coordinates use height. Output is always canonical.
TokenQuad encode_box(const PixelBox& b, const ImageDims& dims,
                     const CodecConfig& cfg = {});

struct DecodedBox {
  PixelBox box;
  bool repaired = false;  // an inverted corner pair was swapped
};

// pixel = (bin / max_bin) * extent. Non-canonical quads are rejected in
// strict mode; in repair mode the offending pair is swapped and flagged.
DecodedBox decode_quad(const TokenQuad& q, const ImageDims& dims,
                       DecodePolicy policy = DecodePolicy::Repair,
                       const CodecConfig& cfg = {});

struct ParseResult {
  std::vector<DecodedBox> boxes;  // M = boxes.size()
  std::vector<std::string> diagnostics;
};

// Groups model-emitted tokens into consecutive quads and decodes them.
// Model output is untrusted: in repair mode unparseable tokens are skipped,
// inverted quads swapped, and a trailing partial quad dropped, all reported
// in diagnostics; strict mode raises TokenError on the first anomaly.
ParseResult parse_sequence(const std::vector<std::string>& tokens,
                           const ImageDims& dims,
                           DecodePolicy policy = DecodePolicy::Repair,
                           const CodecConfig& cfg = {});

}  // namespace groundkit
