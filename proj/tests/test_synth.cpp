// Copyright 2026 The lfgc Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "lfgc/errors.hpp"
#include "lfgc/synth.hpp"

using namespace lfgc;

namespace {

SceneSpec flat_scene(int rows, int cols, int h, int w, int intensity) {
  SceneSpec spec;
  spec.grid_rows = rows;
  spec.grid_cols = cols;
  spec.view_height = h;
  spec.view_width = w;
  spec.background_intensity = intensity;
  return spec;
}

Layer rect_layer(int y, int x, int h, int w, double d, int intensity) {
  Layer l;
  l.shape = ShapeKind::kRect;
  l.y = y;
  l.x = x;
  l.h = h;
  l.w = w;
  l.disparity = d;
  l.intensity = intensity;
  return l;
}

/// Independent per-pixel oracle: walk layers front to back in the layer's
/// own coordinate frame (content with disparity d sits shifted by
/// -(r-1)*round(d), -(c-1)*round(d) in view (r,c)) and take the first cover.
int32_t frontmost_label(const SceneSpec& spec, ViewIndex v, int y, int x) {
  for (int li = static_cast<int>(spec.layers.size()) - 1; li >= 0; --li) {
    const Layer& l = spec.layers[li];
    const int s = static_cast<int>(std::lround(l.disparity));
    const int ly = y + (v.row - 1) * s;
    const int lx = x + (v.col - 1) * s;
    bool covered = false;
    if (l.shape == ShapeKind::kRect) {
      covered = ly >= l.y && ly < l.y + l.h && lx >= l.x && lx < l.x + l.w;
    } else {
      const double ey = (ly - l.cy) / l.ry;
      const double ex = (lx - l.cx) / l.rx;
      covered = ey * ey + ex * ex <= 1.0;
    }
    if (covered) return li + 1;
  }
  return 0;
}

}  // namespace

TEST_SUITE_BEGIN("synth");

TEST_CASE("flat background renders identical views with zero disparity") {
  const RenderedLightField r = render_lf(flat_scene(3, 4, 6, 7, 90));
  REQUIRE(r.lf.view_count() == 12);
  for (const ViewImage& v : r.lf.views) {
    CHECK(v == r.lf.views[0]);
  }
  CHECK(r.lf.views[0].at(0, 0) == 90);
  for (const DisparityMap& d : r.disparity) {
    for (float p : d.pixels()) CHECK(p == 0.0f);
  }
  for (const LabelMap& m : r.labels) {
    CHECK(m.n_labels == 1);
    for (int32_t p : m.labels.pixels()) CHECK(p == 0);
  }
}

TEST_CASE("a d=2 rectangle moves exactly two pixels per horizontal step") {
  SceneSpec spec = flat_scene(1, 2, 16, 24, 30);
  spec.layers.push_back(rect_layer(4, 10, 5, 6, 2.0, 200));

  const RenderedLightField r = render_lf(spec);
  const LabelMap& a = r.labels[0];
  const LabelMap& b = r.labels[1];
  for (int y = 0; y < 16; ++y) {
    for (int x = 0; x < 24; ++x) {
      const bool in_a = a.labels.at(y, x) == 1;
      CHECK(b.labels.at(y, x) == ((y >= 4 && y < 9 && x >= 8 && x < 14) ? 1 : 0));
      CHECK(in_a == (y >= 4 && y < 9 && x >= 10 && x < 16));
    }
  }
  // Intensities travel with the layer.
  CHECK(r.lf.view({1, 1}).at(5, 11) == r.lf.view({1, 2}).at(5, 9));
}

TEST_CASE("two-layer occlusion equals the painter oracle at every pixel") {
  SceneSpec spec = flat_scene(3, 3, 28, 28, 40);
  spec.layers.push_back(rect_layer(6, 6, 12, 14, 1.0, 120));
  Layer front;
  front.shape = ShapeKind::kEllipse;
  front.cy = 14.0;
  front.cx = 15.0;
  front.ry = 5.0;
  front.rx = 6.0;
  front.disparity = 3.0;
  front.intensity = 220;
  spec.layers.push_back(front);

  const RenderedLightField r = render_lf(spec);
  for (int row = 1; row <= 3; ++row) {
    for (int col = 1; col <= 3; ++col) {
      const LabelMap& m = r.labels[(row - 1) * 3 + (col - 1)];
      for (int y = 0; y < 28; ++y) {
        for (int x = 0; x < 28; ++x) {
          CAPTURE(row);
          CAPTURE(col);
          CAPTURE(y);
          CAPTURE(x);
          REQUIRE(m.labels.at(y, x) ==
                  frontmost_label(spec, {row, col}, y, x));
        }
      }
    }
  }
}

TEST_CASE("render_lf is deterministic") {
  SceneSpec spec = flat_scene(2, 2, 10, 10, 50);
  spec.background_texture.kind = TextureKind::kNoise;
  spec.background_texture.amplitude = 25.0;
  spec.background_texture.seed = 11;
  const RenderedLightField a = render_lf(spec);
  const RenderedLightField b = render_lf(spec);
  CHECK(a.lf.views == b.lf.views);
}

TEST_CASE("render_lf rejects content that leaves the frame") {
  SceneSpec spec = flat_scene(1, 9, 16, 16, 0);
  spec.layers.push_back(rect_layer(2, 2, 4, 4, 2.0, 99));
  CHECK_THROWS_AS(render_lf(spec), DataError);
}

TEST_CASE("vignette endpoints") {
  ViewImage img(9, 9, 200);

  SUBCASE("strength zero is the identity") {
    CHECK(apply_vignette(img, 0.0) == img);
  }
  SUBCASE("a corner at strength one goes dark") {
    const ViewImage out = apply_vignette(img, 1.0);
    CHECK(out.at(0, 0) == 0);
    CHECK(out.at(8, 8) == 0);
  }
  SUBCASE("the exact center never changes") {
    for (double s : {0.2, 0.6, 1.0}) {
      CHECK(apply_vignette(img, s).at(4, 4) == 200);
    }
  }
  SUBCASE("gain falls off with radius") {
    const ViewImage out = apply_vignette(img, 0.6);
    CHECK(out.at(4, 4) > out.at(4, 0));
    CHECK(out.at(4, 0) > out.at(0, 0));
  }
}

TEST_CASE("gamma correction fixed points and midtone lift") {
  ViewImage img(1, 3);
  img.at(0, 0) = 0;
  img.at(0, 1) = 64;
  img.at(0, 2) = 255;

  CHECK(gamma_correct(img, 1.0) == img);

  const ViewImage out = gamma_correct(img, 2.0);
  CHECK(out.at(0, 0) == 0);
  CHECK(out.at(0, 1) == 128);  // round(255*sqrt(64/255))
  CHECK(out.at(0, 2) == 255);

  CHECK_THROWS_AS(gamma_correct(img, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(gamma_correct(img, -1.0), std::invalid_argument);
}

TEST_CASE("perturb_disparity determinism and statistics") {
  DisparityMap map(1000, 1000, 2.0f);

  SUBCASE("sigma zero returns the map unchanged") {
    const DisparityMap out = perturb_disparity(map, 0.0, 42);
    CHECK(out == map);
  }
  SUBCASE("a fixed seed reproduces bit-identical noise") {
    const DisparityMap a = perturb_disparity(map, 0.7, 42);
    const DisparityMap b = perturb_disparity(map, 0.7, 42);
    CHECK(a == b);
    CHECK_FALSE(a == perturb_disparity(map, 0.7, 43));
  }
  SUBCASE("noise is zero-mean over a million samples") {
    const double sigma = 0.5;
    const DisparityMap out = perturb_disparity(map, sigma, 7);
    double sum = 0.0;
    for (size_t i = 0; i < map.size(); ++i) {
      sum += out.pixels()[i] - map.pixels()[i];
    }
    const double mean = sum / static_cast<double>(map.size());
    CHECK(std::abs(mean) <= 5.0 * sigma / 1000.0);
  }
}

TEST_SUITE_END();
