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
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "groundkit/box_fusion.hpp"
#include "groundkit/knowledge_prompts.hpp"
#include "groundkit/metrics_map.hpp"
#include "groundkit/metrics_rodeo.hpp"
#include "groundkit/token_codec.hpp"

namespace groundkit {

// Every tool decision in one place. Defaults are the documented ones;
// precedence is flags > config file > defaults, and the effective values
// are hashed into the config fingerprint recorded in every output.
struct ToolConfig {
  FusionConfig fusion;
  CodecConfig codec;
  DecodePolicy decode_policy = DecodePolicy::Repair;
  Interpolation interpolation = Interpolation::Grid101;
  RodeoConfig rodeo;
  PromptMode prompt_mode = PromptMode::LabelOnly;
  std::vector<std::string> attributes =
      AttributeSet::defaults().attributes;
  std::string backend_kind = "stub";  // stub | http
  std::string backend_endpoint;
  std::string backend_model;
  std::string api_key_env = "GROUNDKIT_LLM_API_KEY";
  std::string definitions_path;
  std::string descriptions_path;
  std::string aliases_path;
  std::string known_classes_path;
  double split_ratio = 0.8;
  std::uint64_t seed = 0;
  double max_reject_rate = 0.25;  // abort build above this reject fraction
  unsigned workers = 1;
};

const char* to_string(ScoreMode mode);
ScoreMode score_mode_from_string(std::string_view s);
const char* to_string(Rounding r);
Rounding rounding_from_string(std::string_view s);
const char* to_string(DecodePolicy p);
DecodePolicy decode_policy_from_string(std::string_view s);

// Unknown keys anywhere in the document are rejected with ConfigError.
ToolConfig config_from_json(const nlohmann::json& doc);
nlohmann::json config_to_json(const ToolConfig& cfg);
ToolConfig load_config(const std::string& path);

// "fp-" + FNV-1a of the canonical serialization.
std::string config_fingerprint(const ToolConfig& cfg);

}  // namespace groundkit
