// Copyright 2026 The lfgc Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "lfgc/errors.hpp"
#include "lfgc/metrics.hpp"
#include "test_util.hpp"

using namespace lfgc;

namespace {

Image<double> constant_image(int h, int w, double value) {
  return Image<double>(h, w, value);
}

Image<double> noise_image(int h, int w, uint64_t seed) {
  Image<double> img(h, w);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> lum(0.0, 255.0);
  for (double& p : img.pixels()) p = lum(rng);
  return img;
}

}  // namespace

TEST_SUITE_BEGIN("metrics");

TEST_CASE("identical images score exactly one at any size") {
  for (auto [h, w] : {std::pair{1, 1}, {3, 3}, {5, 7}, {11, 11}, {32, 24}}) {
    const Image<double> img = noise_image(h, w, 42);
    CHECK(ssim(img, img, 255.0) == 1.0);
  }
}

TEST_CASE("ssim of flat images matches the closed form") {
  // With zero variance everywhere the structure term is exactly one and
  // every window sees the same means, so the score reduces to the
  // luminance comparison alone.
  const double c1 = 100.0, c2 = 120.0, L = 255.0;
  const double C1 = (0.01 * L) * (0.01 * L);
  const double expected = (2.0 * c1 * c2 + C1) / (c1 * c1 + c2 * c2 + C1);

  const Image<double> a = constant_image(16, 16, c1);
  const Image<double> b = constant_image(16, 16, c2);
  CHECK(ssim(a, b, L) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(ssim(b, a, L) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("ssim decreases as flat images drift apart") {
  const Image<double> base = constant_image(8, 8, 128.0);
  double previous = 1.0;
  for (double delta : {0.0, 5.0, 20.0, 60.0, 120.0}) {
    const double s = ssim(base, constant_image(8, 8, 128.0 - delta), 255.0);
    CHECK(s <= previous + 1e-15);
    previous = s;
  }
}

TEST_CASE("noise degrades ssim monotonically in strength") {
  const Image<double> clean = noise_image(32, 32, 7);
  std::mt19937_64 rng(8);
  std::normal_distribution<double> unit(0.0, 1.0);
  std::vector<double> offsets(clean.pixels().size());
  for (double& o : offsets) o = unit(rng);

  double previous = 1.0;
  for (double sigma : {1.0, 4.0, 16.0, 48.0}) {
    Image<double> noisy = clean;
    for (size_t i = 0; i < noisy.pixels().size(); ++i) {
      noisy.pixels()[i] += sigma * offsets[i];
    }
    const double s = ssim(clean, noisy, 255.0);
    CHECK(s < previous);
    CHECK(s <= 1.0);
    previous = s;
  }
  CHECK(previous < 0.9);
}

TEST_CASE("ssim validates its inputs") {
  const Image<double> a = constant_image(4, 4, 1.0);
  const Image<double> b = constant_image(4, 5, 1.0);
  CHECK_THROWS_AS(ssim(a, b, 255.0), DataError);
  CHECK_THROWS_AS(ssim(a, a, 0.0), DataError);
  CHECK_THROWS_AS(ssim(a, a, -1.0), DataError);
}

TEST_CASE("the byte-image overload matches the double-image path") {
  ViewImage a(9, 9);
  ViewImage b(9, 9);
  std::mt19937_64 rng(5);
  for (size_t i = 0; i < a.pixels().size(); ++i) {
    a.pixels()[i] = static_cast<uint8_t>(rng() % 256);
    b.pixels()[i] = static_cast<uint8_t>(rng() % 256);
  }
  Image<double> ad(9, 9), bd(9, 9);
  for (size_t i = 0; i < a.pixels().size(); ++i) {
    ad.pixels()[i] = a.pixels()[i];
    bd.pixels()[i] = b.pixels()[i];
  }
  CHECK(ssim(a, b) == ssim(ad, bd, 255.0));
}

TEST_CASE("psnr pools the error over all views") {
  LightFieldGrid orig(1, 2, 2, 2);
  LightFieldGrid recon = orig;
  CHECK(std::isinf(psnr_y(orig, recon)));

  // One sample off by one out of eight: mse 1/8.
  recon.view({1, 1}).pixels()[0] = 1;
  const double expected = 10.0 * std::log10(255.0 * 255.0 * 8.0);
  CHECK(psnr_y(orig, recon) == doctest::Approx(expected).epsilon(1e-12));

  // The same error split across two views pools to the same number.
  LightFieldGrid recon2 = orig;
  recon2.view({1, 1}).pixels()[0] = 1;
  recon2.view({1, 2}).pixels()[3] = 1;
  const double pooled = 10.0 * std::log10(255.0 * 255.0 * 4.0);
  CHECK(psnr_y(orig, recon2) == doctest::Approx(pooled).epsilon(1e-12));

  LightFieldGrid other(1, 1, 2, 2);
  CHECK_THROWS_AS(psnr_y(orig, other), DataError);
}

TEST_CASE("rate-distortion csv roundtrips and sorts by rate") {
  testutil::TempDir dir;
  const auto path = dir / "rd.csv";

  std::vector<RdPoint> points;
  points.push_back({"multiview", 4, 30, 0.91, 38.25, 1.5, 0.4});
  points.push_back({"topleft", 4, 10, 0.25, 44.125, 2.0, 0.5});
  points.push_back(
      {"center", 4, 4, 1.5, std::numeric_limits<double>::infinity(), 0.1,
       0.1});
  emit_rd_csv(path, points);

  const std::vector<RdPoint> back = read_rd_csv(path);
  REQUIRE(back.size() == 3);
  CHECK(back[0].scheme == "topleft");
  CHECK(back[1].scheme == "multiview");
  CHECK(back[2].scheme == "center");
  CHECK(back[0].bpp == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(back[0].psnr_y == doctest::Approx(44.125).epsilon(1e-9));
  CHECK(back[0].qp_first == 4);
  CHECK(back[0].qp_rest == 10);
  CHECK(back[1].enc_s == doctest::Approx(1.5).epsilon(1e-9));
  CHECK(std::isinf(back[2].psnr_y));

  CHECK_THROWS_AS(read_rd_csv(dir / "absent.csv"), DataError);
}

TEST_SUITE_END();
