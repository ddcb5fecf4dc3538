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
#include <filesystem>
#include <iostream>
#include <set>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "groundkit/config.hpp"
#include "groundkit/dataset_ingest.hpp"
#include "groundkit/eval_io.hpp"
#include "groundkit/report.hpp"

namespace gk = groundkit;
using nlohmann::json;

namespace {

gk::ImageDims parse_dims(const std::string& spec) {
  const auto parts = gk::split(spec, 'x');
  if (parts.size() != 2)
    throw gk::ConfigError("--dims expects WxH, got '" + spec + "'");
  try {
    gk::ImageDims dims{std::stoi(parts[0]), std::stoi(parts[1])};
    if (!dims.valid()) throw gk::ConfigError("--dims must be positive: " + spec);
    return dims;
  } catch (const std::logic_error&) {
    throw gk::ConfigError("--dims expects WxH, got '" + spec + "'");
  }
}

std::vector<std::string> whitespace_tokens(const std::vector<std::string>& args) {
  std::vector<std::string> tokens;
  for (const std::string& arg : args) {
    std::string cur;
    for (char c : arg) {
      if (std::isspace(static_cast<unsigned char>(c))) {
        if (!cur.empty()) tokens.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    if (!cur.empty()) tokens.push_back(cur);
  }
  return tokens;
}

struct TokensArgs {
  std::string dims;
  std::string policy;
  std::vector<std::string> inputs;
};

int run_tokens_encode(const gk::ToolConfig& cfg, const TokensArgs& args) {
  const gk::ImageDims dims = parse_dims(args.dims);
  for (const std::string& input : args.inputs) {
    const auto parts = gk::split(input, ',');
    if (parts.size() != 4)
      throw gk::ValidationError("expected x0,y0,x1,y1, got '" + input + "'");
    double coords[4];
    for (int i = 0; i < 4; ++i) {
      try {
        coords[i] = std::stod(parts[i]);
      } catch (const std::logic_error&) {
        throw gk::ValidationError("bad coordinate '" + parts[i] + "'");
      }
    }
    gk::PixelBox box{coords[0], coords[1], coords[2], coords[3]};
    const auto validity = gk::validate_box(box, dims);
    if (!validity.valid())
      throw gk::ValidationError("invalid box '" + input + "': " +
                                validity.describe());
    std::cout << gk::encode_box(box, dims, cfg.codec).surface_form() << "\n";
  }
  return 0;
}

int run_tokens_decode(const gk::ToolConfig& cfg, const TokensArgs& args) {
  const gk::ImageDims dims = parse_dims(args.dims);
  const gk::DecodePolicy policy = args.policy.empty()
                                      ? cfg.decode_policy
                                      : gk::decode_policy_from_string(args.policy);
  const gk::ParseResult result =
      gk::parse_sequence(whitespace_tokens(args.inputs), dims, policy, cfg.codec);
  for (const std::string& d : result.diagnostics) std::cerr << d << "\n";
  for (const gk::DecodedBox& b : result.boxes) {
    std::cout << gk::format_compact(b.box.x0) << "," << gk::format_compact(b.box.y0)
              << "," << gk::format_compact(b.box.x1) << ","
              << gk::format_compact(b.box.y1);
    if (b.repaired) std::cout << " (repaired)";
    std::cout << "\n";
  }
  return 0;
}

struct BuildArgs {
  std::string annotations;
  std::string format = "csv";
  std::string out_dir;
  std::string train_ids_path, test_ids_path;
};

std::vector<std::string> read_id_list(const std::string& path) {
  std::vector<std::string> ids;
  for (const std::string& line : gk::split(gk::read_text_file(path), '\n')) {
    const auto id = gk::trim(line);
    if (!id.empty()) ids.emplace_back(id);
  }
  return ids;
}

int run_build(const gk::ToolConfig& cfg, const BuildArgs& args) {
  const gk::LoadResult loaded = gk::load_annotations(
      args.annotations, gk::annotation_format_from_string(args.format));
  const size_t total_rows = loaded.records.size() + loaded.rejects.size();
  if (total_rows > 0) {
    const double reject_rate =
        static_cast<double>(loaded.rejects.size()) / static_cast<double>(total_rows);
    if (reject_rate > cfg.max_reject_rate)
      throw gk::ValidationError(
          "reject rate " + gk::format_compact(reject_rate) + " exceeds limit " +
          gk::format_compact(cfg.max_reject_rate) + " (" +
          std::to_string(loaded.rejects.size()) + " of " +
          std::to_string(total_rows) + " rows rejected)");
  }

  gk::PairOptions pair_opts;
  pair_opts.mode = cfg.prompt_mode;
  pair_opts.codec = cfg.codec;
  pair_opts.workers = cfg.workers;
  gk::DescriptionTable descriptions;
  if (cfg.prompt_mode == gk::PromptMode::Knowledge) {
    if (cfg.descriptions_path.empty())
      throw gk::ConfigError("knowledge mode needs paths.descriptions");
    descriptions = gk::load_descriptions(cfg.descriptions_path);
    pair_opts.descriptions = &descriptions;
  }
  gk::BuildResult built = gk::build_pairs(loaded.records, cfg.fusion, pair_opts);

  gk::SplitSpec split_spec;
  split_spec.ratio = cfg.split_ratio;
  split_spec.seed = cfg.seed;
  if (!args.train_ids_path.empty())
    split_spec.train_ids = read_id_list(args.train_ids_path);
  if (!args.test_ids_path.empty())
    split_spec.test_ids = read_id_list(args.test_ids_path);
  gk::SplitResult split = gk::split_samples(std::move(built.samples), split_spec);

  std::vector<gk::GroundingSample> samples;
  samples.reserve(split.train.size() + split.test.size());
  for (auto& s : split.train) samples.push_back(std::move(s));
  for (auto& s : split.test) samples.push_back(std::move(s));

  size_t known_count = 0, unknown_count = 0;
  if (!cfg.known_classes_path.empty()) {
    std::map<std::string, std::string> aliases;
    if (!cfg.aliases_path.empty()) aliases = gk::load_alias_map(cfg.aliases_path);
    gk::PartitionResult part = gk::partition_zero_shot(
        std::move(samples), gk::load_class_list(cfg.known_classes_path), aliases);
    known_count = part.known.size();
    unknown_count = part.unknown.size();
    samples.clear();
    for (auto& s : part.known) samples.push_back(std::move(s));
    for (auto& s : part.unknown) samples.push_back(std::move(s));
  }

  std::sort(samples.begin(), samples.end(),
            [](const gk::GroundingSample& a, const gk::GroundingSample& b) {
              if (a.image_id != b.image_id) return a.image_id < b.image_id;
              return a.label < b.label;
            });

  std::filesystem::create_directories(args.out_dir);
  const auto out = [&](const char* name) {
    return (std::filesystem::path(args.out_dir) / name).string();
  };
  gk::write_samples(out("samples.jsonl"), samples);

  std::set<std::string> train_images, test_images;
  size_t train_count = 0, test_count = 0;
  for (const auto& s : samples) {
    if (s.split == gk::Split::Train) {
      train_images.insert(s.image_id);
      ++train_count;
    } else {
      test_images.insert(s.image_id);
      ++test_count;
    }
  }
  auto write_manifest = [&](const char* name, const std::set<std::string>& ids) {
    std::string text;
    for (const std::string& id : ids) text += id + "\n";
    gk::write_text_file(out(name), text);
  };
  write_manifest("split_train.txt", train_images);
  write_manifest("split_test.txt", test_images);

  json counts = {
      {"records", loaded.records.size()},
      {"rejects", loaded.rejects.size()},
      {"train_images", train_images.size()},
      {"test_images", test_images.size()},
      {"samples", samples.size()},
      {"train_samples", train_count},
      {"test_samples", test_count},
  };
  if (!cfg.known_classes_path.empty()) {
    counts["known_samples"] = known_count;
    counts["unknown_samples"] = unknown_count;
  }
  json report = {
      {"annotations", args.annotations},
      {"format", args.format},
      {"config", gk::config_to_json(cfg)},
      {"config_fingerprint", gk::config_fingerprint(cfg)},
      {"counts", counts},
      {"diagnostics", built.diagnostics},
      {"rejects", loaded.rejects},
  };
  gk::write_text_file(out("build_report.json"), report.dump(2) + "\n");
  // Timestamp lives in a sidecar so the report itself is byte-stable.
  gk::write_text_file(out("build_report.stamp"), gk::now_iso8601() + "\n");

  std::cout << "built " << samples.size() << " samples from "
            << loaded.records.size() << " records (" << loaded.rejects.size()
            << " rejects) into " << args.out_dir << "\n";
  return 0;
}

struct EvalArgs {
  std::string pred_path, gt_path;
  std::string which = "all";
  std::string out_dir;
  std::string method = "run";
  std::string params;
  long long train_samples = -1;
  std::string dims;
  std::string format = "markdown";
};

int run_eval(const gk::ToolConfig& cfg, const EvalArgs& args) {
  std::optional<gk::ImageDims> fallback_dims;
  if (!args.dims.empty()) fallback_dims = parse_dims(args.dims);

  const gk::GroundTruthFile gt =
      gk::load_ground_truth(args.gt_path, fallback_dims, cfg.codec);
  if (gt.boxes.empty())
    throw gk::ValidationError("ground truth file has no boxes: " + args.gt_path);
  const std::vector<gk::Detection> preds =
      gk::load_predictions(args.pred_path, gt.dims, fallback_dims, cfg.codec);

  std::set<std::string> gt_labels, pred_labels;
  for (const auto& g : gt.boxes) gt_labels.insert(g.label);
  for (const auto& d : preds) pred_labels.insert(d.label);
  if (!preds.empty()) {
    bool overlap = false;
    for (const auto& l : pred_labels)
      if (gt_labels.count(l)) { overlap = true; break; }
    if (!overlap) {
      std::string msg = "prediction and ground-truth vocabularies are disjoint;";
      msg += " predictions have {";
      bool first = true;
      for (const auto& l : pred_labels) {
        if (!first) msg += ", ";
        msg += "'" + l + "'";
        first = false;
      }
      msg += "} but ground truth has {";
      first = true;
      for (const auto& l : gt_labels) {
        if (!first) msg += ", ";
        msg += "'" + l + "'";
        first = false;
      }
      msg += "}";
      throw gk::ValidationError(msg);
    }
  }

  gk::EvalRun run;
  run.method_name = args.method;
  run.params_count = args.params;
  if (args.train_samples >= 0) run.train_samples = args.train_samples;
  run.config_fingerprint = gk::config_fingerprint(cfg);
  run.run_id = "run-" + gk::fnv1a64_hex(run.config_fingerprint + "\n" +
                                        gk::read_text_file(args.gt_path) + "\n" +
                                        gk::read_text_file(args.pred_path));
  run.metadata = {
      {"which", args.which},
      {"interpolation", gk::to_string(cfg.interpolation)},
      {"rodeo_sigma", cfg.rodeo.sigma},
      {"rodeo_affinity_floor", cfg.rodeo.affinity_floor},
      {"rodeo_aggregation", cfg.rodeo.macro_average ? "macro" : "micro"},
      {"matching", "hungarian on clamped generalized IoU, labels excluded"},
      {"tie_breaking", "confidence desc, then box lexicographic"},
      {"gt_absent_classes", "excluded from mAP mean"},
  };

  if (args.which == "all" || args.which == "map") {
    run.ap = gk::map_suite(preds, gt.boxes, cfg.interpolation, cfg.workers);
    for (const std::string& label : run.ap.ignored_labels)
      run.notes.push_back("prediction label '" + label +
                          "' absent from ground truth: excluded from mAP");
  } else {
    run.notes.push_back("mAP not computed (--which rodeo)");
  }
  if (args.which == "all" || args.which == "rodeo") {
    run.rodeo = gk::rodeo(preds, gt.boxes, cfg.rodeo, cfg.workers);
    gk::PerClassRodeo per_class =
        gk::rodeo_per_class(preds, gt.boxes, cfg.rodeo, cfg.workers);
    run.per_class = std::move(per_class.per_class);
    for (auto& note : per_class.notes) run.notes.push_back(std::move(note));
  } else {
    run.notes.push_back("RoDeO not computed (--which map)");
  }

  const std::string table =
      gk::comparison_table({run}, gk::table_format_from_string(args.format));
  std::cout << table;

  if (!args.out_dir.empty()) {
    std::filesystem::create_directories(args.out_dir);
    const auto out = [&](const char* name) {
      return (std::filesystem::path(args.out_dir) / name).string();
    };
    gk::write_run_archive(out("run_archive.json"), {run});
    const char* ext = args.format == "csv" ? "report.csv"
                      : args.format == "structured" ? "report.json"
                                                    : "report.md";
    gk::write_text_file(out(ext), table);
    if (!run.per_class.empty())
      gk::write_text_file(out("chart_data.json"), gk::per_class_chart_data(run));
    gk::write_text_file(out("eval.stamp"), gk::now_iso8601() + "\n");
  }
  return 0;
}

struct PromptsArgs {
  std::string definitions;
  std::string attrs;
  std::string out_path;
  std::string cache_dir;
  int max_attempts = 3;
};

gk::AttributeSet attrs_from(const gk::ToolConfig& cfg, const std::string& flag) {
  if (flag.empty()) return gk::AttributeSet::from_list(cfg.attributes);
  std::vector<std::string> attrs;
  for (const std::string& a : gk::split(flag, ','))
    if (!gk::trim(a).empty()) attrs.emplace_back(gk::trim(a));
  return gk::AttributeSet::from_list(attrs);
}

std::string definitions_path(const gk::ToolConfig& cfg, const PromptsArgs& args) {
  if (!args.definitions.empty()) return args.definitions;
  if (!cfg.definitions_path.empty()) return cfg.definitions_path;
  throw gk::ConfigError("no definitions file (use --definitions or paths.definitions)");
}

int run_prompts_query(const gk::ToolConfig& cfg, const PromptsArgs& args) {
  const auto registry = gk::DefinitionRegistry::load(definitions_path(cfg, args));
  const auto attrs = attrs_from(cfg, args.attrs);
  std::string out;
  for (const auto& def : registry.defs())
    out += gk::build_llm_query(def, attrs) + "\n";
  if (args.out_path.empty()) std::cout << out;
  else gk::write_text_file(args.out_path, out);
  return 0;
}

int run_prompts_generate(const gk::ToolConfig& cfg, const PromptsArgs& args) {
  const auto registry = gk::DefinitionRegistry::load(definitions_path(cfg, args));
  const auto attrs = attrs_from(cfg, args.attrs);

  std::unique_ptr<gk::LlmBackend> backend;
  if (cfg.backend_kind == "stub") {
    std::map<std::string, std::string> table;
    if (!cfg.descriptions_path.empty())
      for (const auto& [name, desc] : gk::load_descriptions(cfg.descriptions_path))
        table[name] = desc.description;
    backend = std::make_unique<gk::StubBackend>(std::move(table));
  } else if (cfg.backend_kind == "http") {
    if (cfg.backend_endpoint.empty() || cfg.backend_model.empty())
      throw gk::ConfigError("http backend needs prompts.endpoint and prompts.model");
    backend = std::make_unique<gk::HttpBackend>(cfg.backend_endpoint,
                                                cfg.backend_model, cfg.api_key_env);
  } else {
    throw gk::ConfigError("unknown backend kind: " + cfg.backend_kind);
  }

  gk::GenerationOptions opts;
  opts.cache_dir = args.cache_dir;
  opts.max_attempts = args.max_attempts;
  opts.workers = cfg.workers;
  const gk::GenerationResult result =
      gk::generate_descriptions(registry, attrs, *backend, opts);

  if (args.out_path.empty()) throw gk::ConfigError("--out is required");
  gk::write_descriptions(args.out_path, result.descriptions);
  std::cout << "generated " << result.descriptions.size() << " descriptions ("
            << result.backend_calls << " backend calls)\n";
  if (!result.missing.empty()) {
    std::cerr << "missing " << result.missing.size() << " entries:\n";
    for (const std::string& m : result.missing) std::cerr << "  " << m << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"grounding dataset preparation and evaluation toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "JSON config file (flags override it)");

  // Flag overrides applied on top of config-file values.
  struct Overrides {
    double iou_thr = 0.55;
    std::string interp, mode, backend, policy;
    double sigma = 1.0;
    bool macro = false;
    unsigned workers = 1;
    std::uint64_t seed = 0;
    double split_ratio = 0.8;
    std::string descriptions, known_classes, aliases;
  } ov;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--iou-thr", ov.iou_thr,
                    "fusion IoU threshold in (0,1]; annotator boxes without "
                    "scores weigh 1.0")->capture_default_str();
    cmd->add_option("--interp", ov.interp, "AP interpolation: 101pt|cont (default 101pt)");
    cmd->add_option("--mode", ov.mode, "prompt mode: label_only|knowledge (default label_only)");
    cmd->add_option("--backend", ov.backend, "LLM backend: stub|http (default stub)");
    cmd->add_option("--policy", ov.policy, "decode policy: strict|repair (default repair)");
    cmd->add_option("--sigma", ov.sigma,
                    "RoDeO localization sigma")->capture_default_str();
    cmd->add_flag("--macro", ov.macro, "RoDeO macro (per-image) aggregation instead of micro");
    cmd->add_option("--workers", ov.workers, "worker threads")->capture_default_str();
    cmd->add_option("--seed", ov.seed, "split shuffle seed")->capture_default_str();
    cmd->add_option("--split-ratio", ov.split_ratio,
                    "train share of images")->capture_default_str();
    cmd->add_option("--descriptions", ov.descriptions, "descriptions file (stub table)");
    cmd->add_option("--known-classes", ov.known_classes, "known-classes list for zero-shot partition");
    cmd->add_option("--aliases", ov.aliases, "label alias map");
  };

  TokensArgs tokens_args;
  CLI::App* tokens = app.add_subcommand(
      "tokens",
      "encode/decode location tokens (vocabulary bins 0..1000 inclusive, "
      "rounding half away from zero)");
  CLI::App* tok_encode = tokens->add_subcommand("encode", "pixel boxes to <loc_K> quads");
  tok_encode->add_option("--dims", tokens_args.dims, "image dims WxH")->required();
  tok_encode->add_option("boxes", tokens_args.inputs, "boxes as x0,y0,x1,y1")->required();
  CLI::App* tok_decode = tokens->add_subcommand("decode", "<loc_K> sequences to pixel boxes");
  tok_decode->add_option("--dims", tokens_args.dims, "image dims WxH")->required();
  tok_decode->add_option("--policy", tokens_args.policy, "strict|repair (default repair)");
  tok_decode->add_option("tokens", tokens_args.inputs, "token sequence")->required();
  tokens->require_subcommand(1);

  BuildArgs build_args;
  CLI::App* build = app.add_subcommand("build", "build grounding samples from annotations");
  build->add_option("--annotations", build_args.annotations, "annotation file")->required();
  build->add_option("--format", build_args.format, "csv|coco")->capture_default_str();
  build->add_option("--out", build_args.out_dir, "output directory")->required();
  build->add_option("--train-ids", build_args.train_ids_path, "explicit train image-id list");
  build->add_option("--test-ids", build_args.test_ids_path, "explicit test image-id list");
  add_common(build);

  EvalArgs eval_args;
  CLI::App* eval = app.add_subcommand("eval", "score predictions against ground truth");
  eval->add_option("--pred", eval_args.pred_path, "predictions file")->required();
  eval->add_option("--gt", eval_args.gt_path, "ground-truth file (samples JSONL or CSV)")->required();
  eval->add_option("--which", eval_args.which, "map|rodeo|all")->capture_default_str();
  eval->add_option("--out", eval_args.out_dir, "output directory for archive and report");
  eval->add_option("--method", eval_args.method, "method name for the table row")->capture_default_str();
  eval->add_option("--params", eval_args.params, "parameter count display text");
  eval->add_option("--train-samples", eval_args.train_samples, "training sample count for the table");
  eval->add_option("--dims", eval_args.dims, "fallback image dims WxH for token predictions");
  eval->add_option("--format", eval_args.format, "markdown|csv|structured")->capture_default_str();
  add_common(eval);

  PromptsArgs prompts_args;
  CLI::App* prompts = app.add_subcommand("prompts", "knowledge description pipeline");
  CLI::App* prompts_query = prompts->add_subcommand("query", "print the LLM queries");
  CLI::App* prompts_generate = prompts->add_subcommand("generate", "generate descriptions via a backend");
  for (CLI::App* cmd : {prompts_query, prompts_generate}) {
    cmd->add_option("--definitions", prompts_args.definitions, "definitions file");
    cmd->add_option("--attrs", prompts_args.attrs,
                    "comma-separated attributes (default shape,location,density,color)");
    cmd->add_option("--out", prompts_args.out_path, "output file");
    add_common(cmd);
  }
  prompts_generate->add_option("--cache", prompts_args.cache_dir, "response cache directory");
  prompts_generate->add_option("--max-attempts", prompts_args.max_attempts,
                               "backend attempts per entry")->capture_default_str();
  prompts->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    gk::ToolConfig cfg;
    if (!config_path.empty()) cfg = gk::load_config(config_path);

    // flags > file > defaults
    auto applied = [&](const CLI::App* cmd, const std::string& flag) {
      return cmd->count(flag) > 0;
    };
    const std::vector<const CLI::App*> override_cmds = {build, eval,
                                                        prompts_query,
                                                        prompts_generate};
    for (const CLI::App* cmd : override_cmds) {
      if (!cmd->parsed()) continue;
      if (applied(cmd, "--iou-thr")) cfg.fusion.iou_threshold = ov.iou_thr;
      if (applied(cmd, "--interp"))
        cfg.interpolation = gk::interpolation_from_string(ov.interp);
      if (applied(cmd, "--mode"))
        cfg.prompt_mode = gk::prompt_mode_from_string(ov.mode);
      if (applied(cmd, "--backend")) {
        if (ov.backend != "stub" && ov.backend != "http")
          throw gk::ConfigError("--backend must be stub or http");
        cfg.backend_kind = ov.backend;
      }
      if (applied(cmd, "--policy"))
        cfg.decode_policy = gk::decode_policy_from_string(ov.policy);
      if (applied(cmd, "--sigma")) cfg.rodeo.sigma = ov.sigma;
      if (applied(cmd, "--macro")) cfg.rodeo.macro_average = ov.macro;
      if (applied(cmd, "--workers")) cfg.workers = std::max(1u, ov.workers);
      if (applied(cmd, "--seed")) cfg.seed = ov.seed;
      if (applied(cmd, "--split-ratio")) cfg.split_ratio = ov.split_ratio;
      if (applied(cmd, "--descriptions")) cfg.descriptions_path = ov.descriptions;
      if (applied(cmd, "--known-classes")) cfg.known_classes_path = ov.known_classes;
      if (applied(cmd, "--aliases")) cfg.aliases_path = ov.aliases;
    }
    if (!(cfg.fusion.iou_threshold > 0.0) || cfg.fusion.iou_threshold > 1.0)
      throw gk::ConfigError("--iou-thr must be in (0, 1]");

    if (tokens->parsed()) {
      if (tok_encode->parsed()) return run_tokens_encode(cfg, tokens_args);
      return run_tokens_decode(cfg, tokens_args);
    }
    if (build->parsed()) return run_build(cfg, build_args);
    if (eval->parsed()) return run_eval(cfg, eval_args);
    if (prompts->parsed()) {
      if (prompts_query->parsed()) return run_prompts_query(cfg, prompts_args);
      return run_prompts_generate(cfg, prompts_args);
    }
    return 2;
  } catch (const gk::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const gk::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const gk::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
