#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "panoproj/segmentation.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace panoproj;
namespace pt = panoproj::testing;

TEST_CASE("an all-zero map has no objects") {
  const SegmentationMap seg = connected_components(LabelMap(16, 8));
  CHECK(seg.objects.empty());
  for (std::int32_t v : seg.labels.data) CHECK(v == 0);
}

TEST_CASE("diagonal contact does not merge components") {
  LabelMap labels(8, 8);
  labels.at(2, 2) = 5;
  labels.at(3, 3) = 5;
  const SegmentationMap seg = connected_components(labels);
  REQUIRE(seg.objects.size() == 2);
  CHECK(seg.objects[0].class_label == 5);
  CHECK(seg.objects[1].class_label == 5);
  CHECK(seg.labels.at(2, 2) != seg.labels.at(3, 3));
}

TEST_CASE("touching blobs of different classes never merge") {
  LabelMap labels(8, 4);
  labels.at(1, 1) = 3;
  labels.at(2, 1) = 4;
  const SegmentationMap seg = connected_components(labels);
  CHECK(seg.objects.size() == 2);
}

TEST_CASE("a blob across the horizontal seam is one object") {
  LabelMap labels(16, 6);
  for (int y = 2; y < 5; ++y) {
    labels.at(15, y) = 2;
    labels.at(0, y) = 2;
    labels.at(1, y) = 2;
  }
  const SegmentationMap seg = connected_components(labels, true);
  CHECK(seg.objects.size() == 1);
  CHECK(seg.objects[0].pixel_count == 9);

  const SegmentationMap split = connected_components(labels, false);
  CHECK(split.objects.size() == 2);
}

TEST_CASE("union-find matches flood fill on random rasters") {
  for (std::uint32_t seed = 1; seed <= 30; ++seed) {
    const LabelMap labels = pt::random_label_raster(32, 24, 4, seed);
    const SegmentationMap seg = connected_components(labels, true);
    const LabelMap oracle = pt::flood_fill_components(labels, true);
    CHECK(pt::same_partition(seg.labels, oracle));
  }
}

TEST_CASE("object count is invariant under class relabeling") {
  const LabelMap labels = pt::random_label_raster(40, 20, 5, 77);
  LabelMap renamed = labels;
  for (std::int32_t& v : renamed.data)
    if (v != 0) v = v * 13 + 2;  // injective rename
  const SegmentationMap a = connected_components(labels);
  const SegmentationMap b = connected_components(renamed);
  CHECK(a.objects.size() == b.objects.size());
  CHECK(pt::same_partition(a.labels, b.labels));
}

TEST_CASE("object ids are consecutive and regions carry counts and boxes") {
  LabelMap labels(12, 8);
  for (int x = 2; x <= 4; ++x)
    for (int y = 1; y <= 2; ++y) labels.at(x, y) = 9;
  labels.at(10, 6) = 4;

  const SegmentationMap seg = connected_components(labels);
  REQUIRE(seg.objects.size() == 2);
  CHECK(seg.objects[0].id == 1);
  CHECK(seg.objects[1].id == 2);
  CHECK(seg.objects[0].class_label == 9);
  CHECK(seg.objects[0].pixel_count == 6);
  CHECK(seg.objects[0].min_x == 2);
  CHECK(seg.objects[0].max_x == 4);
  CHECK(seg.objects[0].min_y == 1);
  CHECK(seg.objects[0].max_y == 2);
  CHECK(seg.objects[1].class_label == 4);
}

TEST_CASE("small components can be dropped") {
  LabelMap labels(16, 8);
  for (int x = 0; x < 6; ++x) labels.at(x, 2) = 1;
  labels.at(10, 5) = 1;  // single pixel
  const SegmentationMap seg = connected_components(labels, true, 3);
  REQUIRE(seg.objects.size() == 1);
  CHECK(seg.objects[0].id == 1);
  CHECK(seg.objects[0].pixel_count == 6);
  CHECK(seg.labels.at(10, 5) == 0);
}

TEST_CASE("zero-label segmentation renders to a zero viewport") {
  SegmentationMap seg;
  seg.labels = LabelMap(64, 32);
  ViewportSpec spec;
  spec.width = 40;
  spec.height = 22;
  const LabelMap vp = render_seg_viewport(seg, spec, {0.3, 0.2});
  for (std::int32_t v : vp.data) CHECK(v == 0);
}

TEST_CASE("objects outside the field of view are absent") {
  LabelMap labels(128, 64);
  pt::paint_disc(labels, kPi, 0.0, deg_to_rad(10.0), 6);  // behind the viewer
  const SegmentationMap seg = connected_components(labels);
  REQUIRE(!seg.objects.empty());

  ViewportSpec spec;
  spec.width = 64;
  spec.height = 36;
  spec.hfov = deg_to_rad(150.0);
  const LabelMap vp = render_seg_viewport(seg, spec, {0.5, 0.0});
  for (std::int32_t v : vp.data) CHECK(v == 0);
}

TEST_CASE("rendered ids are a subset of the input ids") {
  const LabelMap labels = pt::random_label_raster(96, 48, 4, 2024);
  const SegmentationMap seg = connected_components(labels);
  std::set<std::int32_t> ids{0};
  for (const ObjectRegion& r : seg.objects) ids.insert(r.id);

  pt::Rng rng(5);
  for (int i = 0; i < 8; ++i) {
    ViewportSpec spec;
    spec.view_dir = {rng.uniform(-kPi, kPi), rng.uniform(-0.6, 0.6)};
    spec.hfov = rng.uniform(deg_to_rad(100.0), deg_to_rad(160.0));
    spec.width = 50;
    spec.height = 30;
    const PanniniParams params{rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0)};
    const LabelMap vp = render_seg_viewport(seg, spec, params);
    for (std::int32_t v : vp.data) CHECK(ids.count(v) == 1);
  }
}

TEST_CASE("object table export") {
  LabelMap labels(8, 4);
  labels.at(1, 1) = 2;
  const SegmentationMap seg = connected_components(labels);
  const std::string path =
      (std::filesystem::temp_directory_path() / "panoproj_objects.csv").string();
  write_object_table_csv(path, seg);
  std::ifstream in(path);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(header == "id,class,pixel_count,min_x,min_y,max_x,max_y");
  CHECK(row == "1,2,1,1,1,1,1");
  std::filesystem::remove(path);
}
