// Copyright 2026 The lfgc Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "lfgc/errors.hpp"
#include "lfgc/io.hpp"
#include "lfgc/light_field.hpp"
#include "test_util.hpp"

using namespace lfgc;

namespace {

bool report_mentions(const std::vector<std::string>& report,
                     const std::string& needle) {
  return std::any_of(report.begin(), report.end(), [&](const std::string& s) {
    return s.find(needle) != std::string::npos;
  });
}

ViewImage random_view(int h, int w, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> px(0, 255);
  ViewImage img(h, w);
  for (auto& p : img.pixels()) p = static_cast<uint8_t>(px(rng));
  return img;
}

}  // namespace

TEST_SUITE_BEGIN("lf_model");

TEST_CASE("luminance_of matches the BT.709 weights") {
  Image<uint8_t> r(1, 3), g(1, 3), b(1, 3);
  // white, black, pure red
  r.at(0, 0) = 255; g.at(0, 0) = 255; b.at(0, 0) = 255;
  r.at(0, 1) = 0;   g.at(0, 1) = 0;   b.at(0, 1) = 0;
  r.at(0, 2) = 255; g.at(0, 2) = 0;   b.at(0, 2) = 0;

  const ViewImage y = luminance_of(r, g, b);
  CHECK(y.at(0, 0) == 255);
  CHECK(y.at(0, 1) == 0);
  CHECK(y.at(0, 2) == 54);
}

TEST_CASE("luminance_of rejects mismatched channel shapes") {
  Image<uint8_t> r(2, 2), g(2, 2), b(2, 3);
  CHECK_THROWS_AS(luminance_of(r, g, b), DataError);
}

TEST_CASE("validate_grid accepts a well-formed grid") {
  LightFieldGrid lf(9, 9, 8, 8);
  CHECK(validate_grid(lf).empty());
}

TEST_CASE("validate_grid names the view with a wrong size") {
  LightFieldGrid lf(3, 3, 8, 8);
  lf.view({2, 3}) = ViewImage(8, 7);
  const auto report = validate_grid(lf);
  REQUIRE(report.size() == 1);
  CHECK(report_mentions(report, "(2,3)"));
}

TEST_CASE("validate_grid reports a missing view") {
  LightFieldGrid lf(4, 7, 8, 8);
  lf.view({3, 7}) = ViewImage();
  const auto report = validate_grid(lf);
  REQUIRE(report.size() == 1);
  CHECK(report_mentions(report, "missing view (3,7)"));
}

TEST_CASE("validate_grid lists every violation") {
  LightFieldGrid lf(2, 2, 8, 8);
  lf.view({1, 1}) = ViewImage();
  lf.view({2, 2}) = ViewImage(4, 4);
  CHECK(validate_grid(lf).size() == 2);
}

TEST_CASE("view index ordering and naming") {
  CHECK(ViewIndex{1, 2} < ViewIndex{2, 1});
  CHECK(ViewIndex{2, 1} < ViewIndex{2, 3});
  CHECK(ViewIndex{3, 7} == ViewIndex{3, 7});
  CHECK(to_string(ViewIndex{3, 7}) == "(3,7)");
}

TEST_CASE("grid view accessor walks row-major slots") {
  LightFieldGrid lf(2, 3, 1, 1);
  for (int r = 1; r <= 2; ++r) {
    for (int c = 1; c <= 3; ++c) {
      lf.view({r, c}).at(0, 0) = static_cast<uint8_t>(10 * r + c);
    }
  }
  CHECK(lf.views[0].at(0, 0) == 11);
  CHECK(lf.views[2].at(0, 0) == 13);
  CHECK(lf.views[5].at(0, 0) == 23);
  CHECK(lf.has({2, 3}));
  CHECK_FALSE(lf.has({3, 1}));
  CHECK_FALSE(lf.has({0, 1}));
}

TEST_CASE("pgm roundtrip preserves every pixel") {
  testutil::TempDir dir;
  const ViewImage img = random_view(13, 17, 1);
  write_pgm(dir / "a.pgm", img);
  CHECK(read_pgm(dir / "a.pgm") == img);
}

TEST_CASE("pgm16 roundtrip preserves 16-bit samples") {
  testutil::TempDir dir;
  Image<uint16_t> img(5, 4);
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> px(0, 65535);
  for (auto& p : img.pixels()) p = static_cast<uint16_t>(px(rng));
  write_pgm16(dir / "a.pgm", img);
  CHECK(read_pgm16(dir / "a.pgm") == img);
}

TEST_CASE("pfm roundtrip preserves floats including negatives") {
  testutil::TempDir dir;
  DisparityMap map(6, 9);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<float> d(-8.0f, 8.0f);
  for (auto& p : map.pixels()) p = d(rng);
  map.at(0, 0) = -0.0f;
  map.at(5, 8) = 3.25f;
  write_pfm(dir / "a.pfm", map);
  const DisparityMap back = read_pfm(dir / "a.pfm");
  REQUIRE(back.height() == map.height());
  REQUIRE(back.width() == map.width());
  for (size_t i = 0; i < map.size(); ++i) {
    CHECK(back.pixels()[i] == map.pixels()[i]);
  }
}

TEST_CASE("ppm ingestion converts to luminance") {
  testutil::TempDir dir;
  Image<uint8_t> r(2, 2, 255), g(2, 2, 0), b(2, 2, 0);
  const auto path = dir / "view_01_01.ppm";
  {
    std::vector<uint8_t> bytes;
    const std::string header = "P6\n2 2\n255\n";
    bytes.insert(bytes.end(), header.begin(), header.end());
    for (int i = 0; i < 4; ++i) {
      bytes.push_back(255);
      bytes.push_back(0);
      bytes.push_back(0);
    }
    write_binary_file(path, bytes);
  }
  Image<uint8_t> rr, gg, bb;
  read_ppm(path, rr, gg, bb);
  CHECK(rr == r);
  CHECK(gg == g);
  CHECK(bb == b);
  CHECK(luminance_of(rr, gg, bb).at(1, 1) == 54);
}

TEST_CASE("light field directory roundtrip") {
  testutil::TempDir dir;
  LightFieldGrid lf(2, 3, 7, 5);
  for (size_t i = 0; i < lf.views.size(); ++i) {
    lf.views[i] = random_view(7, 5, 100 + i);
  }
  save_light_field(dir.path(), lf);

  const LightFieldGrid back = load_light_field(dir.path());
  CHECK(back.n_rows == 2);
  CHECK(back.n_cols == 3);
  CHECK(back.height == 7);
  CHECK(back.width == 5);
  CHECK(back.views == lf.views);
  CHECK(validate_grid(back).empty());
}

TEST_CASE("load_light_field leaves missing views empty for validation") {
  testutil::TempDir dir;
  LightFieldGrid lf(2, 2, 4, 4);
  save_light_field(dir.path(), lf);
  std::filesystem::remove(dir / view_file_name({2, 1}));

  const LightFieldGrid back = load_light_field(dir.path());
  CHECK(report_mentions(validate_grid(back), "missing view (2,1)"));
}

TEST_CASE("disparity and label sidecars roundtrip, absent files are nullopt") {
  testutil::TempDir dir;
  CHECK_FALSE(load_disparity(dir.path(), {1, 1}).has_value());
  CHECK_FALSE(load_label_map(dir.path(), {1, 1}).has_value());

  DisparityMap d(3, 3, -1.5f);
  save_disparity(dir.path(), {1, 1}, d);
  REQUIRE(load_disparity(dir.path(), {1, 1}).has_value());
  CHECK(load_disparity(dir.path(), {1, 1})->at(2, 2) == -1.5f);

  LabelMap m(3, 3, 4, 0);
  m.labels.at(0, 1) = 3;
  m.labels.at(2, 2) = 1;
  m.labels.at(1, 0) = 2;
  save_label_map(dir.path(), {1, 1}, m);
  REQUIRE(load_label_map(dir.path(), {1, 1}).has_value());
  CHECK(*load_label_map(dir.path(), {1, 1}) == m);
}

TEST_CASE("superray table json roundtrip") {
  testutil::TempDir dir;
  SuperRayTable table;
  table.entries.push_back({120, 1.5f, 1.75f});
  table.entries.push_back({3, -0.25f, -0.25f});
  save_superray_table(dir / "table.json", table);
  CHECK(load_superray_table(dir / "table.json") == table);
}

TEST_CASE("manifest roundtrip and corrupt manifest error") {
  testutil::TempDir dir;
  write_manifest(dir.path(), {4, 5, 32, 48, 8});
  const LightFieldManifest m = read_manifest(dir.path());
  CHECK(m.n_rows == 4);
  CHECK(m.n_cols == 5);
  CHECK(m.height == 32);
  CHECK(m.width == 48);
  CHECK(m.bit_depth == 8);

  write_binary_file(dir / "lf.json", {'{', 'x'});
  CHECK_THROWS_AS(read_manifest(dir.path()), DataError);
}

TEST_CASE("file name helpers zero-pad indices") {
  CHECK(view_file_name({1, 1}) == "view_01_01.pgm");
  CHECK(view_file_name({12, 3}) == "view_12_03.pgm");
  CHECK(disparity_file_name({2, 10}) == "disp_02_10.pfm");
  CHECK(label_file_name({7, 7}) == "labels_07_07.pgm");
}

TEST_SUITE_END();
