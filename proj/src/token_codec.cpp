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
#include "groundkit/token_codec.hpp"

#include <algorithm>
#include <cfenv>
#include <cmath>
#include <utility>

namespace groundkit {
namespace {

std::string ordinal_token(size_t index, std::string_view raw) {
  return "token " + std::to_string(index) + ": '" + std::string(raw) + "'";
}

// Decimal without leading zeros ("0" alone is fine).
std::optional<int> parse_plain_int(std::string_view digits) {
  if (digits.empty()) return std::nullopt;
  if (digits.size() > 1 && digits[0] == '0') return std::nullopt;
  long long value = 0;
  for (char c : digits) {
    if (c < '0' || c > '9') return std::nullopt;
    value = value * 10 + (c - '0');
    if (value > 1000000) return std::nullopt;
  }
  return static_cast<int>(value);
}

}  // namespace

std::string LocToken::surface_form() const {
  return "<loc_" + std::to_string(bin) + ">";
}

LocToken make_loc_token(int bin, const CodecConfig& cfg) {
  if (bin < 0 || bin > cfg.max_bin)
    throw TokenError("bin " + std::to_string(bin) + " outside [0, " +
                     std::to_string(cfg.max_bin) + "]");
  return LocToken{bin};
}

std::optional<int> parse_loc_token(std::string_view token,
                                   const CodecConfig& cfg) {
  std::string_view digits = token;
  constexpr std::string_view kPrefix = "<loc_";
  if (token.size() >= kPrefix.size() + 2 && token.substr(0, kPrefix.size()) == kPrefix &&
      token.back() == '>') {
    digits = token.substr(kPrefix.size(), token.size() - kPrefix.size() - 1);
  }
  auto value = parse_plain_int(digits);
  if (!value || *value > cfg.max_bin) return std::nullopt;
  return value;
}

std::string TokenQuad::surface_form() const {
  return x0.surface_form() + " " + y0.surface_form() + " " +
         x1.surface_form() + " " + y1.surface_form();
}

LocToken encode_coord(double pixel, int extent, const CodecConfig& cfg,
                      std::string_view coord_name) {
  if (!std::isfinite(pixel) || pixel < 0.0 || pixel > static_cast<double>(extent))
    throw TokenError(std::string(coord_name) + " out of range: " +
                     format_compact(pixel) + " not in [0, " +
                     std::to_string(extent) + "]");
  const double scaled = pixel / static_cast<double>(extent) *
                        static_cast<double>(cfg.max_bin);
  long long bin;
  if (cfg.rounding == Rounding::HalfAwayFromZero) {
    bin = std::llround(scaled);
  } else {
    // nearbyint honors the default FE_TONEAREST mode: ties go to even.
    bin = static_cast<long long>(std::nearbyint(scaled));
  }
  bin = std::clamp<long long>(bin, 0, cfg.max_bin);
  return LocToken{static_cast<int>(bin)};
}

TokenQuad encode_box(const PixelBox& b, const ImageDims& dims,
                     const CodecConfig& cfg) {
  return TokenQuad{
      encode_coord(b.x0, dims.width, cfg, "x0"),
      encode_coord(b.y0, dims.height, cfg, "y0"),
      encode_coord(b.x1, dims.width, cfg, "x1"),
      encode_coord(b.y1, dims.height, cfg, "y1"),
  };
}

DecodedBox decode_quad(const TokenQuad& q, const ImageDims& dims,
                       DecodePolicy policy, const CodecConfig& cfg) {
  for (const LocToken& t : {q.x0, q.y0, q.x1, q.y1}) {
    if (t.bin < 0 || t.bin > cfg.max_bin)
      throw TokenError("bin " + std::to_string(t.bin) + " outside [0, " +
                       std::to_string(cfg.max_bin) + "]");
  }
  int bx0 = q.x0.bin, by0 = q.y0.bin, bx1 = q.x1.bin, by1 = q.y1.bin;
  bool repaired = false;
  if (bx0 > bx1) {
    if (policy == DecodePolicy::Strict)
      throw TokenError("non-canonical quad: x0 bin " + std::to_string(bx0) +
                       " > x1 bin " + std::to_string(bx1));
    std::swap(bx0, bx1);
    repaired = true;
  }
  if (by0 > by1) {
    if (policy == DecodePolicy::Strict)
      throw TokenError("non-canonical quad: y0 bin " + std::to_string(by0) +
                       " > y1 bin " + std::to_string(by1));
    std::swap(by0, by1);
    repaired = true;
  }
  const double mb = static_cast<double>(cfg.max_bin);
  PixelBox box{
      bx0 / mb * dims.width,
      by0 / mb * dims.height,
      bx1 / mb * dims.width,
      by1 / mb * dims.height,
  };
  return DecodedBox{box, repaired};
}

ParseResult parse_sequence(const std::vector<std::string>& tokens,
                           const ImageDims& dims, DecodePolicy policy,
                           const CodecConfig& cfg) {
  ParseResult result;
  std::vector<int> bins;
  bins.reserve(tokens.size());
  for (size_t i = 0; i < tokens.size(); ++i) {
    auto bin = parse_loc_token(tokens[i], cfg);
    if (!bin) {
      if (policy == DecodePolicy::Strict)
        throw TokenError("unrecognized " + ordinal_token(i, tokens[i]));
      result.diagnostics.push_back("skipped unrecognized " +
                                   ordinal_token(i, tokens[i]));
      continue;
    }
    bins.push_back(*bin);
  }
  if (policy == DecodePolicy::Strict && bins.size() % 4 != 0)
    throw TokenError("sequence length " + std::to_string(bins.size()) +
                     " is not a multiple of 4");
  const size_t quads = bins.size() / 4;
  for (size_t i = 0; i < quads; ++i) {
    TokenQuad q{LocToken{bins[4 * i + 0]}, LocToken{bins[4 * i + 1]},
                LocToken{bins[4 * i + 2]}, LocToken{bins[4 * i + 3]}};
    DecodedBox decoded = decode_quad(q, dims, policy, cfg);
    if (decoded.repaired)
      result.diagnostics.push_back("box " + std::to_string(i) +
                                   ": repaired inverted corner pair");
    result.boxes.push_back(decoded);
  }
  const size_t leftover = bins.size() % 4;
  if (leftover != 0)
    result.diagnostics.push_back(
        "trailing partial quad (" + std::to_string(leftover) +
        (leftover == 1 ? " token)" : " tokens)"));
  return result;
}

}  // namespace groundkit
