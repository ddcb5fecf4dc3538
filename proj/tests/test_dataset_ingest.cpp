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
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <set>

#include "groundkit/dataset_ingest.hpp"
#include "test_util.hpp"

using namespace groundkit;

namespace {

std::vector<AnnotationRecord> two_by_two() {
  const ImageDims dims{512, 512};
  return {
      {"img1", dims, "A", PixelBox{10, 10, 100, 100}, "a1"},
      {"img1", dims, "B", PixelBox{200, 200, 300, 300}, "a1"},
      {"img2", dims, "A", PixelBox{20, 20, 110, 110}, "a2"},
      {"img2", dims, "B", PixelBox{210, 210, 310, 310}, "a2"},
  };
}

GroundingSample make_sample(const std::string& image, const std::string& label) {
  GroundingSample s;
  s.image_id = image;
  s.dims = ImageDims{512, 512};
  s.label = label;
  s.prompt = "Locate " + label + ".";
  s.gt_boxes = {PixelBox{0, 0, 10, 10}};
  s.gt_quads = {encode_box(s.gt_boxes[0], s.dims)};
  return s;
}

}  // namespace

TEST_CASE("csv loader reads well-formed rows") {
  const LoadResult result =
      load_annotations(gktest::fixture("annotations_10img.csv"),
                       AnnotationFormat::Csv);
  CHECK(result.rejects.empty());
  CHECK(result.records.size() == 20);
  std::set<std::string> images;
  size_t markers = 0;
  for (const AnnotationRecord& r : result.records) {
    images.insert(r.image_id);
    if (!r.box) ++markers;
  }
  CHECK(images.size() == 10);
  CHECK(markers == 1);  // the "No finding" row
}

TEST_CASE("csv loader rejects malformed rows with row numbers") {
  const LoadResult result = load_annotations(
      gktest::fixture("annotations_malformed.csv"), AnnotationFormat::Csv);
  CHECK(result.records.size() == 2);
  REQUIRE(result.rejects.size() == 3);
  CHECK(result.rejects[0].find("row 3") != std::string::npos);
  CHECK(result.rejects[0].find("inverted-x") != std::string::npos);
  CHECK(result.rejects[1].find("row 4") != std::string::npos);
  CHECK(result.rejects[1].find("out-of-bounds-x") != std::string::npos);
  CHECK(result.rejects[2].find("row 6") != std::string::npos);
}

TEST_CASE("csv loader requires the header") {
  const std::string path =
      (std::filesystem::temp_directory_path() / "gk_noheader.csv").string();
  write_text_file(path, "img1,512,512,A,0,0,10,10,a1\n");
  CHECK_THROWS_AS(load_annotations(path, AnnotationFormat::Csv),
                  ValidationError);
  std::filesystem::remove(path);
}

TEST_CASE("missing file raises IoError") {
  CHECK_THROWS_AS(load_annotations("/nonexistent/file.csv", AnnotationFormat::Csv),
                  IoError);
}

TEST_CASE("unknown format string raises ConfigError") {
  CHECK_THROWS_AS(annotation_format_from_string("parquet"), ConfigError);
}

TEST_CASE("coco loader converts xywh to corners exactly") {
  const LoadResult result = load_annotations(gktest::fixture("coco_small.json"),
                                             AnnotationFormat::CocoJson);
  CHECK(result.rejects.empty());
  REQUIRE(result.records.size() == 3);
  CHECK(result.records[0].image_id == "imgA");
  CHECK(result.records[0].label == "Cardiomegaly");
  CHECK(result.records[0].box == PixelBox{10, 20, 40, 60});
  CHECK(result.records[2].dims.width == 640);
}

TEST_CASE("coco image without dims raises") {
  const std::string path =
      (std::filesystem::temp_directory_path() / "gk_nodims.json").string();
  write_text_file(path,
                  R"({"images": [{"id": 1}], "categories": [], "annotations": []})");
  CHECK_THROWS_AS(load_annotations(path, AnnotationFormat::CocoJson),
                  ValidationError);
  std::filesystem::remove(path);
}

TEST_CASE("coco annotation with unknown image is a reject, not a crash") {
  const std::string path =
      (std::filesystem::temp_directory_path() / "gk_unkimg.json").string();
  write_text_file(path, R"({
    "images": [{"id": 1, "file_name": "a", "width": 100, "height": 100}],
    "categories": [{"id": 1, "name": "X"}],
    "annotations": [{"image_id": 2, "category_id": 1, "bbox": [0, 0, 10, 10]}]
  })");
  const LoadResult result = load_annotations(path, AnnotationFormat::CocoJson);
  CHECK(result.records.empty());
  REQUIRE(result.rejects.size() == 1);
  CHECK(result.rejects[0].find("annotation 1") != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("build_pairs produces one sample per image-label with boxes") {
  const BuildResult built = build_pairs(two_by_two(), FusionConfig{}, {});
  REQUIRE(built.samples.size() == 4);
  CHECK(built.samples[0].image_id == "img1");
  CHECK(built.samples[0].label == "A");
  CHECK(built.samples[0].prompt == "Locate A.");
  CHECK(built.samples[0].gt_boxes.size() == 1);
  CHECK(built.samples[0].gt_quads.size() == 1);
}

TEST_CASE("images with only marker records produce nothing") {
  const std::vector<AnnotationRecord> records = {
      {"img1", ImageDims{512, 512}, "No finding", std::nullopt, "a1"},
  };
  CHECK(build_pairs(records, FusionConfig{}, {}).samples.empty());
}

TEST_CASE("overlapping same-label annotator boxes fuse into one") {
  const ImageDims dims{512, 512};
  const std::vector<AnnotationRecord> records = {
      {"img1", dims, "Cardiomegaly", PixelBox{150, 200, 350, 400}, "a1"},
      {"img1", dims, "Cardiomegaly", PixelBox{160, 210, 360, 410}, "a2"},
  };
  const BuildResult built = build_pairs(records, FusionConfig{}, {});
  REQUIRE(built.samples.size() == 1);
  CHECK(built.samples[0].gt_boxes.size() == 1);
  // equal annotator weights: plain coordinate average
  CHECK(built.samples[0].gt_boxes[0].x0 == 155.0);
}

TEST_CASE("knowledge mode requires descriptions for every label") {
  DescriptionTable table;
  table["a"] = KnowledgeDescription{"A", "a visual description", {}};
  PairOptions opts;
  opts.mode = PromptMode::Knowledge;
  opts.descriptions = &table;
  CHECK_THROWS_WITH_AS(build_pairs(two_by_two(), FusionConfig{}, opts),
                       doctest::Contains("'B'"), ValidationError);

  table["b"] = KnowledgeDescription{"B", "another description", {}};
  const BuildResult built = build_pairs(two_by_two(), FusionConfig{}, opts);
  REQUIRE(built.samples.size() == 4);
  CHECK(built.samples[0].prompt == "Locate A: a visual description");
}

TEST_CASE("conflicting dims for an image are dropped with a diagnostic") {
  const std::vector<AnnotationRecord> records = {
      {"img1", ImageDims{512, 512}, "A", PixelBox{0, 0, 10, 10}, "a1"},
      {"img1", ImageDims{1024, 1024}, "A", PixelBox{0, 0, 10, 10}, "a2"},
  };
  const BuildResult built = build_pairs(records, FusionConfig{}, {});
  REQUIRE(built.samples.size() == 1);
  CHECK(built.samples[0].gt_boxes.size() == 1);
  REQUIRE(built.diagnostics.size() == 1);
  CHECK(built.diagnostics[0].find("conflicting dims") != std::string::npos);
}

TEST_CASE("build_pairs is deterministic across worker counts") {
  const LoadResult loaded = load_annotations(
      gktest::fixture("annotations_10img.csv"), AnnotationFormat::Csv);
  PairOptions serial, parallel;
  parallel.workers = 4;
  const BuildResult a = build_pairs(loaded.records, FusionConfig{}, serial);
  const BuildResult b = build_pairs(loaded.records, FusionConfig{}, parallel);
  REQUIRE(a.samples.size() == b.samples.size());
  for (size_t i = 0; i < a.samples.size(); ++i) {
    CHECK(a.samples[i].image_id == b.samples[i].image_id);
    CHECK(a.samples[i].label == b.samples[i].label);
    CHECK(a.samples[i].gt_boxes == b.samples[i].gt_boxes);
  }
}

TEST_CASE("ratio split is deterministic and leak-free") {
  std::vector<GroundingSample> samples;
  for (int i = 1; i <= 10; ++i) {
    const std::string img = "img" + std::to_string(i);
    samples.push_back(make_sample(img, "A"));
    samples.push_back(make_sample(img, "B"));
  }
  SplitSpec spec;
  spec.ratio = 0.8;
  spec.seed = 7;
  const SplitResult first = split_samples(samples, spec);
  std::set<std::string> train_imgs, test_imgs;
  for (const auto& s : first.train) train_imgs.insert(s.image_id);
  for (const auto& s : first.test) test_imgs.insert(s.image_id);
  CHECK(train_imgs.size() == 8);
  CHECK(test_imgs.size() == 2);
  for (const std::string& img : train_imgs) CHECK(!test_imgs.count(img));
  for (const auto& s : first.train) CHECK(s.split == Split::Train);
  for (const auto& s : first.test) CHECK(s.split == Split::Test);

  const SplitResult second = split_samples(samples, spec);
  REQUIRE(second.test.size() == first.test.size());
  for (size_t i = 0; i < first.test.size(); ++i)
    CHECK(first.test[i].image_id == second.test[i].image_id);
}

TEST_CASE("explicit split lists give exact assignment") {
  std::vector<GroundingSample> samples = {make_sample("a", "X"),
                                          make_sample("b", "X"),
                                          make_sample("c", "X")};
  SplitSpec spec;
  spec.test_ids = std::vector<std::string>{"b"};
  const SplitResult split = split_samples(samples, spec);
  CHECK(split.train.size() == 2);
  REQUIRE(split.test.size() == 1);
  CHECK(split.test[0].image_id == "b");

  SplitSpec bad;
  bad.test_ids = std::vector<std::string>{"zzz"};
  CHECK_THROWS_AS(split_samples(samples, bad), ValidationError);

  SplitSpec overlapping;
  overlapping.train_ids = std::vector<std::string>{"a", "b"};
  overlapping.test_ids = std::vector<std::string>{"b", "c"};
  CHECK_THROWS_AS(split_samples(samples, overlapping), ValidationError);

  SplitSpec uncovered;
  uncovered.train_ids = std::vector<std::string>{"a"};
  uncovered.test_ids = std::vector<std::string>{"b"};
  CHECK_THROWS_AS(split_samples(samples, uncovered), ValidationError);
}

TEST_CASE("zero-shot partition is total, disjoint, and alias aware") {
  std::vector<GroundingSample> samples = {
      make_sample("a", "Cardiomegaly"), make_sample("b", "cardiac enlargement"),
      make_sample("c", "Pneumothorax"), make_sample("d", "Edema")};
  const std::map<std::string, std::string> aliases = {
      {"cardiac enlargement", "cardiomegaly"}};
  const PartitionResult part =
      partition_zero_shot(samples, {"cardiomegaly"}, aliases);
  CHECK(part.known.size() == 2);  // exact label + alias, case-insensitive
  CHECK(part.unknown.size() == 2);
  CHECK(part.known.size() + part.unknown.size() == samples.size());
  for (const auto& s : part.known) CHECK(s.partition == Partition::Known);
  for (const auto& s : part.unknown) CHECK(s.partition == Partition::Unknown);

  CHECK_THROWS_AS(partition_zero_shot(samples, {}, {}), ValidationError);
}

TEST_CASE("samples file round-trips") {
  const LoadResult loaded = load_annotations(
      gktest::fixture("annotations_10img.csv"), AnnotationFormat::Csv);
  BuildResult built = build_pairs(loaded.records, FusionConfig{}, {});
  const std::string path =
      (std::filesystem::temp_directory_path() / "gk_samples.jsonl").string();
  write_samples(path, built.samples);
  const std::vector<GroundingSample> back = read_samples(path);
  REQUIRE(back.size() == built.samples.size());
  for (size_t i = 0; i < back.size(); ++i) {
    CHECK(back[i].image_id == built.samples[i].image_id);
    CHECK(back[i].label == built.samples[i].label);
    CHECK(back[i].prompt == built.samples[i].prompt);
    CHECK(back[i].gt_boxes == built.samples[i].gt_boxes);
    CHECK(back[i].gt_quads == built.samples[i].gt_quads);
  }
  std::filesystem::remove(path);
}

TEST_CASE("alias map and class list loaders") {
  const auto aliases = load_alias_map(gktest::fixture("aliases.json"));
  CHECK(aliases.at("effusion") == "pleural effusion");
  const auto classes = load_class_list(gktest::fixture("known_classes.json"));
  REQUIRE(classes.size() == 2);
  CHECK(classes[0] == "cardiomegaly");
}
