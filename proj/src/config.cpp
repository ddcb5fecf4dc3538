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
#include "groundkit/config.hpp"

#include <set>

namespace groundkit {

using nlohmann::json;

const char* to_string(ScoreMode mode) {
  return mode == ScoreMode::Mean ? "mean" : "max";
}

ScoreMode score_mode_from_string(std::string_view s) {
  if (s == "mean") return ScoreMode::Mean;
  if (s == "max") return ScoreMode::Max;
  throw ConfigError("unknown score mode: '" + std::string(s) +
                    "' (expected mean or max)");
}

const char* to_string(Rounding r) {
  return r == Rounding::HalfAwayFromZero ? "half_away_from_zero"
                                         : "half_to_even";
}

Rounding rounding_from_string(std::string_view s) {
  if (s == "half_away_from_zero") return Rounding::HalfAwayFromZero;
  if (s == "half_to_even") return Rounding::HalfToEven;
  throw ConfigError("unknown rounding: '" + std::string(s) +
                    "' (expected half_away_from_zero or half_to_even)");
}

const char* to_string(DecodePolicy p) {
  return p == DecodePolicy::Strict ? "strict" : "repair";
}

DecodePolicy decode_policy_from_string(std::string_view s) {
  if (s == "strict") return DecodePolicy::Strict;
  if (s == "repair") return DecodePolicy::Repair;
  throw ConfigError("unknown decode policy: '" + std::string(s) +
                    "' (expected strict or repair)");
}

namespace {

void check_keys(const json& obj, const std::string& section,
                const std::set<std::string>& allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key()))
      throw ConfigError("unknown config key '" +
                        (section.empty() ? it.key() : section + "." + it.key()) +
                        "'");
  }
}

}  // namespace

ToolConfig config_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  check_keys(doc, "",
             {"fusion", "codec", "metrics", "prompts", "paths", "build",
              "workers"});
  ToolConfig cfg;

  if (doc.contains("fusion")) {
    const json& f = doc["fusion"];
    check_keys(f, "fusion", {"iou_threshold", "score_mode", "skip_degenerate"});
    cfg.fusion.iou_threshold = f.value("iou_threshold", cfg.fusion.iou_threshold);
    if (f.contains("score_mode"))
      cfg.fusion.score_mode =
          score_mode_from_string(f["score_mode"].get<std::string>());
    cfg.fusion.skip_degenerate =
        f.value("skip_degenerate", cfg.fusion.skip_degenerate);
    if (!(cfg.fusion.iou_threshold > 0.0) || cfg.fusion.iou_threshold > 1.0)
      throw ConfigError("fusion.iou_threshold must be in (0, 1]");
  }
  if (doc.contains("codec")) {
    const json& c = doc["codec"];
    check_keys(c, "codec", {"max_bin", "rounding", "decode_policy"});
    cfg.codec.max_bin = c.value("max_bin", cfg.codec.max_bin);
    if (cfg.codec.max_bin < 1)
      throw ConfigError("codec.max_bin must be at least 1");
    if (c.contains("rounding"))
      cfg.codec.rounding = rounding_from_string(c["rounding"].get<std::string>());
    if (c.contains("decode_policy"))
      cfg.decode_policy =
          decode_policy_from_string(c["decode_policy"].get<std::string>());
  }
  if (doc.contains("metrics")) {
    const json& m = doc["metrics"];
    check_keys(m, "metrics",
               {"interpolation", "rodeo_sigma", "rodeo_affinity_floor",
                "rodeo_aggregation"});
    if (m.contains("interpolation"))
      cfg.interpolation =
          interpolation_from_string(m["interpolation"].get<std::string>());
    cfg.rodeo.sigma = m.value("rodeo_sigma", cfg.rodeo.sigma);
    if (!(cfg.rodeo.sigma > 0.0))
      throw ConfigError("metrics.rodeo_sigma must be positive");
    cfg.rodeo.affinity_floor =
        m.value("rodeo_affinity_floor", cfg.rodeo.affinity_floor);
    if (m.contains("rodeo_aggregation")) {
      const std::string agg = m["rodeo_aggregation"].get<std::string>();
      if (agg != "micro" && agg != "macro")
        throw ConfigError("metrics.rodeo_aggregation must be micro or macro");
      cfg.rodeo.macro_average = agg == "macro";
    }
  }
  if (doc.contains("prompts")) {
    const json& p = doc["prompts"];
    check_keys(p, "prompts",
               {"mode", "attributes", "backend", "endpoint", "model",
                "api_key_env"});
    if (p.contains("mode"))
      cfg.prompt_mode = prompt_mode_from_string(p["mode"].get<std::string>());
    if (p.contains("attributes")) {
      cfg.attributes = p["attributes"].get<std::vector<std::string>>();
      AttributeSet::from_list(cfg.attributes);  // validates
    }
    if (p.contains("backend")) {
      cfg.backend_kind = p["backend"].get<std::string>();
      if (cfg.backend_kind != "stub" && cfg.backend_kind != "http")
        throw ConfigError("prompts.backend must be stub or http");
    }
    cfg.backend_endpoint = p.value("endpoint", cfg.backend_endpoint);
    cfg.backend_model = p.value("model", cfg.backend_model);
    cfg.api_key_env = p.value("api_key_env", cfg.api_key_env);
  }
  if (doc.contains("paths")) {
    const json& p = doc["paths"];
    check_keys(p, "paths",
               {"definitions", "descriptions", "aliases", "known_classes"});
    cfg.definitions_path = p.value("definitions", cfg.definitions_path);
    cfg.descriptions_path = p.value("descriptions", cfg.descriptions_path);
    cfg.aliases_path = p.value("aliases", cfg.aliases_path);
    cfg.known_classes_path = p.value("known_classes", cfg.known_classes_path);
  }
  if (doc.contains("build")) {
    const json& b = doc["build"];
    check_keys(b, "build", {"split_ratio", "seed", "max_reject_rate"});
    cfg.split_ratio = b.value("split_ratio", cfg.split_ratio);
    if (cfg.split_ratio < 0.0 || cfg.split_ratio > 1.0)
      throw ConfigError("build.split_ratio must be in [0, 1]");
    cfg.seed = b.value("seed", cfg.seed);
    cfg.max_reject_rate = b.value("max_reject_rate", cfg.max_reject_rate);
    if (cfg.max_reject_rate < 0.0 || cfg.max_reject_rate > 1.0)
      throw ConfigError("build.max_reject_rate must be in [0, 1]");
  }
  if (doc.contains("workers")) {
    cfg.workers = doc["workers"].get<unsigned>();
    if (cfg.workers < 1) throw ConfigError("workers must be at least 1");
  }
  return cfg;
}

json config_to_json(const ToolConfig& cfg) {
  return json{
      {"fusion",
       {{"iou_threshold", cfg.fusion.iou_threshold},
        {"score_mode", to_string(cfg.fusion.score_mode)},
        {"skip_degenerate", cfg.fusion.skip_degenerate}}},
      {"codec",
       {{"max_bin", cfg.codec.max_bin},
        {"rounding", to_string(cfg.codec.rounding)},
        {"decode_policy", to_string(cfg.decode_policy)}}},
      {"metrics",
       {{"interpolation", to_string(cfg.interpolation)},
        {"rodeo_sigma", cfg.rodeo.sigma},
        {"rodeo_affinity_floor", cfg.rodeo.affinity_floor},
        {"rodeo_aggregation", cfg.rodeo.macro_average ? "macro" : "micro"}}},
      {"prompts",
       {{"mode", to_string(cfg.prompt_mode)},
        {"attributes", cfg.attributes},
        {"backend", cfg.backend_kind},
        {"endpoint", cfg.backend_endpoint},
        {"model", cfg.backend_model},
        {"api_key_env", cfg.api_key_env}}},
      {"paths",
       {{"definitions", cfg.definitions_path},
        {"descriptions", cfg.descriptions_path},
        {"aliases", cfg.aliases_path},
        {"known_classes", cfg.known_classes_path}}},
      {"build",
       {{"split_ratio", cfg.split_ratio},
        {"seed", cfg.seed},
        {"max_reject_rate", cfg.max_reject_rate}}},
      // workers is an execution knob: outputs are identical for any count,
      // so it stays out of the decision record and the fingerprint.
  };
}

ToolConfig load_config(const std::string& path) {
  json doc;
  try {
    doc = json::parse(read_text_file(path));
  } catch (const json::exception& e) {
    throw ConfigError("config file " + path + ": " + e.what());
  }
  return config_from_json(doc);
}

std::string config_fingerprint(const ToolConfig& cfg) {
  return "fp-" + fnv1a64_hex(config_to_json(cfg).dump());
}

}  // namespace groundkit
