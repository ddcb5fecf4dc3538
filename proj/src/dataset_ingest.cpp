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
#include "groundkit/dataset_ingest.hpp"

#include <algorithm>
#include <charconv>
#include <random>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace groundkit {

using nlohmann::json;

namespace {

std::optional<double> parse_double(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  double value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

std::optional<int> parse_int(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

LoadResult load_csv(const std::string& path) {
  const std::string text = read_text_file(path);
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line))
    throw ValidationError(path + ": empty annotation file");

  const std::vector<std::string> header = parse_csv_line(line);
  std::map<std::string, size_t> col;
  for (size_t i = 0; i < header.size(); ++i)
    col[to_lower(trim(header[i]))] = i;
  for (const char* required :
       {"image_id", "width", "height", "label", "x0", "y0", "x1", "y1"}) {
    if (!col.count(required))
      throw ValidationError(path + ": header is missing column '" +
                            std::string(required) + "'");
  }
  const bool has_annotator = col.count("annotator") > 0;

  LoadResult result;
  size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const std::vector<std::string> fields = parse_csv_line(line);
    auto reject = [&](const std::string& why) {
      result.rejects.push_back("row " + std::to_string(row) + ": " + why);
    };
    if (fields.size() < header.size()) {
      reject("expected " + std::to_string(header.size()) + " fields, got " +
             std::to_string(fields.size()));
      continue;
    }
    auto field = [&](const char* name) -> std::string_view {
      return fields[col.at(name)];
    };
    AnnotationRecord rec;
    rec.image_id = trim(field("image_id"));
    rec.label = trim(field("label"));
    if (rec.image_id.empty()) { reject("empty image_id"); continue; }
    if (rec.label.empty()) { reject("empty label"); continue; }
    auto w = parse_int(field("width")), h = parse_int(field("height"));
    if (!w || !h || *w < 1 || *h < 1) {
      reject("invalid dims '" + std::string(field("width")) + "x" +
             std::string(field("height")) + "'");
      continue;
    }
    rec.dims = ImageDims{*w, *h};
    if (has_annotator) rec.annotator = trim(fields[col.at("annotator")]);

    const std::string_view raw[4] = {field("x0"), field("y0"), field("x1"),
                                     field("y1")};
    const int empty_coords =
        static_cast<int>(trim(raw[0]).empty()) + static_cast<int>(trim(raw[1]).empty()) +
        static_cast<int>(trim(raw[2]).empty()) + static_cast<int>(trim(raw[3]).empty());
    if (empty_coords == 4) {
      // boxless marker row ("No finding")
      result.records.push_back(std::move(rec));
      continue;
    }
    if (empty_coords != 0) {
      reject("partially empty coordinates");
      continue;
    }
    auto x0 = parse_double(raw[0]), y0 = parse_double(raw[1]),
         x1 = parse_double(raw[2]), y1 = parse_double(raw[3]);
    if (!x0 || !y0 || !x1 || !y1) {
      reject("unparseable coordinates");
      continue;
    }
    PixelBox box{*x0, *y0, *x1, *y1};
    BoxValidity validity = validate_box(box, rec.dims);
    if (!validity.valid()) {
      reject("invalid box: " + validity.describe());
      continue;
    }
    rec.box = box;
    result.records.push_back(std::move(rec));
  }
  return result;
}

LoadResult load_coco(const std::string& path) {
  json doc;
  try {
    doc = json::parse(read_text_file(path));
  } catch (const json::exception& e) {
    throw ValidationError(path + ": " + e.what());
  }
  if (!doc.is_object())
    throw ValidationError(path + ": expected a JSON object");

  std::map<std::int64_t, ImageDims> dims_by_image;
  std::map<std::int64_t, std::string> image_names;
  for (const json& img : doc.value("images", json::array())) {
    if (!img.contains("id"))
      throw ValidationError(path + ": image entry without id");
    const std::int64_t id = img["id"].get<std::int64_t>();
    if (!img.contains("width") || !img.contains("height"))
      throw ValidationError(path + ": image " + std::to_string(id) +
                            " is missing dims");
    ImageDims dims{img["width"].get<int>(), img["height"].get<int>()};
    if (!dims.valid())
      throw ValidationError(path + ": image " + std::to_string(id) +
                            " has non-positive dims");
    dims_by_image[id] = dims;
    image_names[id] = img.value("file_name", std::to_string(id));
  }
  std::map<std::int64_t, std::string> categories;
  for (const json& cat : doc.value("categories", json::array()))
    categories[cat.at("id").get<std::int64_t>()] =
        cat.value("name", std::to_string(cat.at("id").get<std::int64_t>()));

  LoadResult result;
  size_t index = 0;
  for (const json& ann : doc.value("annotations", json::array())) {
    ++index;
    auto reject = [&](const std::string& why) {
      result.rejects.push_back("annotation " + std::to_string(index) + ": " +
                               why);
    };
    if (!ann.contains("image_id") || !ann.contains("category_id") ||
        !ann.contains("bbox") || !ann["bbox"].is_array() ||
        ann["bbox"].size() != 4) {
      reject("missing image_id, category_id, or 4-element bbox");
      continue;
    }
    const std::int64_t image_id = ann["image_id"].get<std::int64_t>();
    auto dims_it = dims_by_image.find(image_id);
    if (dims_it == dims_by_image.end()) {
      reject("unknown image id " + std::to_string(image_id));
      continue;
    }
    auto cat_it = categories.find(ann["category_id"].get<std::int64_t>());
    if (cat_it == categories.end()) {
      reject("unknown category id " +
             std::to_string(ann["category_id"].get<std::int64_t>()));
      continue;
    }
    const double x = ann["bbox"][0].get<double>();
    const double y = ann["bbox"][1].get<double>();
    const double w = ann["bbox"][2].get<double>();
    const double h = ann["bbox"][3].get<double>();
    if (w < 0 || h < 0) {
      reject("negative bbox width or height");
      continue;
    }
    PixelBox box{x, y, x + w, y + h};
    BoxValidity validity = validate_box(box, dims_it->second);
    if (!validity.valid()) {
      reject("invalid box: " + validity.describe());
      continue;
    }
    AnnotationRecord rec;
    rec.image_id = image_names.at(image_id);
    rec.dims = dims_it->second;
    rec.label = cat_it->second;
    rec.box = box;
    result.records.push_back(std::move(rec));
  }
  return result;
}

}  // namespace

AnnotationFormat annotation_format_from_string(std::string_view s) {
  if (s == "csv") return AnnotationFormat::Csv;
  if (s == "coco" || s == "coco_json") return AnnotationFormat::CocoJson;
  throw ConfigError("unknown annotation format: '" + std::string(s) +
                    "' (expected csv or coco)");
}

LoadResult load_annotations(const std::string& path, AnnotationFormat format) {
  switch (format) {
    case AnnotationFormat::Csv: return load_csv(path);
    case AnnotationFormat::CocoJson: return load_coco(path);
  }
  throw ConfigError("unknown annotation format");
}

const char* to_string(Split s) { return s == Split::Train ? "train" : "test"; }

const char* to_string(Partition p) {
  switch (p) {
    case Partition::InDomain: return "in_domain";
    case Partition::Known: return "known";
    case Partition::Unknown: return "unknown";
  }
  return "in_domain";
}

BuildResult build_pairs(const std::vector<AnnotationRecord>& records,
                        const FusionConfig& fusion, const PairOptions& opts) {
  if (opts.mode == PromptMode::Knowledge && !opts.descriptions)
    throw ValidationError("knowledge mode requires a descriptions table");

  BuildResult result;

  struct ImageGroup {
    ImageDims dims;
    std::vector<ScoredBox> boxes;
  };
  std::map<std::string, ImageGroup> by_image;
  for (const AnnotationRecord& rec : records) {
    auto [it, inserted] = by_image.try_emplace(rec.image_id);
    if (inserted) {
      it->second.dims = rec.dims;
    } else if (it->second.dims.width != rec.dims.width ||
               it->second.dims.height != rec.dims.height) {
      result.diagnostics.push_back(
          rec.image_id + ": conflicting dims, dropped record with " +
          std::to_string(rec.dims.width) + "x" + std::to_string(rec.dims.height));
      continue;
    }
    if (!rec.box) continue;  // "No finding" marker: image with no abnormality
    it->second.boxes.push_back(ScoredBox{*rec.box, rec.label, 1.0, rec.annotator});
  }

  // Knowledge mode needs a description for every label before any work.
  if (opts.mode == PromptMode::Knowledge) {
    std::set<std::string> missing;
    for (const auto& [id, group] : by_image)
      for (const ScoredBox& b : group.boxes)
        if (!opts.descriptions->count(to_lower(b.label))) missing.insert(b.label);
    if (!missing.empty()) {
      std::string list;
      for (const std::string& m : missing) {
        if (!list.empty()) list += ", ";
        list += "'" + m + "'";
      }
      throw ValidationError("no description for labels: " + list);
    }
  }

  std::vector<const std::pair<const std::string, ImageGroup>*> images;
  images.reserve(by_image.size());
  for (const auto& entry : by_image) images.push_back(&entry);

  std::vector<std::vector<GroundingSample>> per_image(images.size());
  std::vector<std::vector<std::string>> per_image_diags(images.size());

  parallel_for(images.size(), opts.workers, [&](size_t i) {
    const auto& [image_id, group] = *images[i];
    if (group.boxes.empty()) return;
    FusionResult fused = fuse(group.boxes, fusion);
    for (const std::string& d : fused.diagnostics)
      per_image_diags[i].push_back(image_id + ": " + d);

    std::map<std::string, std::vector<PixelBox>> by_label;
    for (const ScoredBox& b : fused.boxes) by_label[b.label].push_back(b.box);

    for (const auto& [label, boxes] : by_label) {
      GroundingSample sample;
      sample.image_id = image_id;
      sample.dims = group.dims;
      sample.label = label;
      std::optional<KnowledgeDescription> desc;
      if (opts.mode == PromptMode::Knowledge)
        desc = opts.descriptions->at(to_lower(label));
      sample.prompt = build_grounding_prompt(label, desc, opts.mode);
      sample.gt_boxes = boxes;
      for (const PixelBox& b : boxes)
        sample.gt_quads.push_back(encode_box(b, group.dims, opts.codec));
      per_image[i].push_back(std::move(sample));
    }
  });

  for (size_t i = 0; i < images.size(); ++i) {
    for (auto& d : per_image_diags[i]) result.diagnostics.push_back(std::move(d));
    for (auto& s : per_image[i]) result.samples.push_back(std::move(s));
  }
  std::sort(result.samples.begin(), result.samples.end(),
            [](const GroundingSample& a, const GroundingSample& b) {
              if (a.image_id != b.image_id) return a.image_id < b.image_id;
              return a.label < b.label;
            });
  return result;
}

SplitResult split_samples(std::vector<GroundingSample> samples,
                          const SplitSpec& spec) {
  std::set<std::string> image_set;
  for (const GroundingSample& s : samples) image_set.insert(s.image_id);
  std::vector<std::string> images(image_set.begin(), image_set.end());

  std::set<std::string> test_images;
  if (spec.train_ids || spec.test_ids) {
    std::set<std::string> train_listed, test_listed;
    auto check_known = [&](const std::vector<std::string>& ids,
                           std::set<std::string>& out) {
      for (const std::string& id : ids) {
        if (!image_set.count(id))
          throw ValidationError("split list references unknown image '" + id +
                                "'");
        out.insert(id);
      }
    };
    if (spec.train_ids) check_known(*spec.train_ids, train_listed);
    if (spec.test_ids) check_known(*spec.test_ids, test_listed);
    for (const std::string& id : train_listed)
      if (test_listed.count(id))
        throw ValidationError("image '" + id + "' listed in both splits");
    if (spec.train_ids && spec.test_ids) {
      for (const std::string& id : images)
        if (!train_listed.count(id) && !test_listed.count(id))
          throw ValidationError("image '" + id + "' not covered by either split list");
      test_images = test_listed;
    } else if (spec.test_ids) {
      test_images = test_listed;
    } else {
      for (const std::string& id : images)
        if (!train_listed.count(id)) test_images.insert(id);
    }
  } else {
    if (spec.ratio < 0.0 || spec.ratio > 1.0)
      throw ConfigError("split ratio must be in [0, 1], got " +
                        format_compact(spec.ratio));
    // Pinned Fisher-Yates so the assignment is identical on every platform.
    std::vector<std::string> shuffled = images;
    std::mt19937_64 rng(spec.seed);
    for (size_t i = shuffled.size(); i > 1; --i)
      std::swap(shuffled[i - 1], shuffled[rng() % i]);
    const size_t n_train = std::min<size_t>(
        shuffled.size(),
        static_cast<size_t>(round_half_away(spec.ratio *
                                            static_cast<double>(shuffled.size()))));
    for (size_t i = n_train; i < shuffled.size(); ++i)
      test_images.insert(shuffled[i]);
  }

  SplitResult out;
  for (GroundingSample& s : samples) {
    if (test_images.count(s.image_id)) {
      s.split = Split::Test;
      out.test.push_back(std::move(s));
    } else {
      s.split = Split::Train;
      out.train.push_back(std::move(s));
    }
  }
  return out;
}

PartitionResult partition_zero_shot(
    std::vector<GroundingSample> samples,
    const std::vector<std::string>& known_classes,
    const std::map<std::string, std::string>& aliases) {
  if (known_classes.empty())
    throw ValidationError("known-classes list must be nonempty");
  std::map<std::string, std::string> canon_aliases;
  for (const auto& [alias, canonical] : aliases)
    canon_aliases[to_lower(alias)] = to_lower(canonical);
  auto canonical = [&](const std::string& label) {
    std::string key = to_lower(label);
    auto it = canon_aliases.find(key);
    return it == canon_aliases.end() ? key : it->second;
  };
  std::set<std::string> known;
  for (const std::string& k : known_classes) known.insert(canonical(k));

  PartitionResult out;
  for (GroundingSample& s : samples) {
    if (known.count(canonical(s.label))) {
      s.partition = Partition::Known;
      out.known.push_back(std::move(s));
    } else {
      s.partition = Partition::Unknown;
      out.unknown.push_back(std::move(s));
    }
  }
  return out;
}

namespace {

json sample_to_json(const GroundingSample& s) {
  json boxes = json::array();
  for (const PixelBox& b : s.gt_boxes)
    boxes.push_back({b.x0, b.y0, b.x1, b.y1});
  json quads = json::array();
  for (const TokenQuad& q : s.gt_quads)
    quads.push_back({q.x0.surface_form(), q.y0.surface_form(),
                     q.x1.surface_form(), q.y1.surface_form()});
  return json{
      {"image_id", s.image_id}, {"width", s.dims.width},
      {"height", s.dims.height}, {"label", s.label},
      {"prompt", s.prompt},     {"boxes", boxes},
      {"quads", quads},         {"split", to_string(s.split)},
      {"partition", to_string(s.partition)},
  };
}

GroundingSample sample_from_json(const json& j) {
  GroundingSample s;
  s.image_id = j.at("image_id").get<std::string>();
  s.dims = ImageDims{j.at("width").get<int>(), j.at("height").get<int>()};
  s.label = j.at("label").get<std::string>();
  s.prompt = j.at("prompt").get<std::string>();
  for (const json& b : j.at("boxes"))
    s.gt_boxes.push_back(PixelBox{b.at(0).get<double>(), b.at(1).get<double>(),
                                  b.at(2).get<double>(), b.at(3).get<double>()});
  for (const json& q : j.at("quads")) {
    TokenQuad quad;
    LocToken* slots[4] = {&quad.x0, &quad.y0, &quad.x1, &quad.y1};
    for (int i = 0; i < 4; ++i) {
      auto bin = parse_loc_token(q.at(i).get<std::string>());
      if (!bin) throw ValidationError("bad token in samples file: " +
                                      q.at(i).get<std::string>());
      *slots[i] = LocToken{*bin};
    }
    s.gt_quads.push_back(quad);
  }
  const std::string split = j.value("split", "train");
  s.split = split == "test" ? Split::Test : Split::Train;
  const std::string part = j.value("partition", "in_domain");
  s.partition = part == "known" ? Partition::Known
               : part == "unknown" ? Partition::Unknown
                                   : Partition::InDomain;
  if (s.gt_boxes.empty() || s.gt_boxes.size() != s.gt_quads.size())
    throw ValidationError("samples file: record for '" + s.image_id +
                          "' violates box/quad invariants");
  return s;
}

}  // namespace

void write_samples(const std::string& path,
                   const std::vector<GroundingSample>& samples) {
  std::string out;
  for (const GroundingSample& s : samples) out += sample_to_json(s).dump() + "\n";
  write_text_file(path, out);
}

std::vector<GroundingSample> read_samples(const std::string& path) {
  const std::string text = read_text_file(path);
  std::istringstream in(text);
  std::string line;
  std::vector<GroundingSample> samples;
  size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    try {
      samples.push_back(sample_from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw ValidationError(path + " line " + std::to_string(row) + ": " +
                            e.what());
    }
  }
  return samples;
}

std::map<std::string, std::string> load_alias_map(const std::string& path) {
  json doc;
  try {
    doc = json::parse(read_text_file(path));
  } catch (const json::exception& e) {
    throw ValidationError("alias map " + path + ": " + e.what());
  }
  if (!doc.is_object())
    throw ValidationError("alias map " + path + ": expected a JSON object");
  std::map<std::string, std::string> aliases;
  for (auto it = doc.begin(); it != doc.end(); ++it)
    aliases[it.key()] = it.value().get<std::string>();
  return aliases;
}

std::vector<std::string> load_class_list(const std::string& path) {
  json doc;
  try {
    doc = json::parse(read_text_file(path));
  } catch (const json::exception& e) {
    throw ValidationError("class list " + path + ": " + e.what());
  }
  const json* arr = nullptr;
  if (doc.is_array()) arr = &doc;
  else if (doc.is_object() && doc.contains("classes") && doc["classes"].is_array())
    arr = &doc["classes"];
  else
    throw ValidationError("class list " + path +
                          ": expected an array or {\"classes\": [...]}");
  std::vector<std::string> classes;
  for (const json& c : *arr) classes.push_back(c.get<std::string>());
  return classes;
}

}  // namespace groundkit
