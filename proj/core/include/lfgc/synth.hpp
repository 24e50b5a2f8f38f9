// Copyright 2026 The lfgc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef LFGC_SYNTH_HPP
#define LFGC_SYNTH_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "lfgc/image.hpp"
#include "lfgc/light_field.hpp"

namespace lfgc {

/// Layered scenes with constant per-layer disparity. Geometry is specified
/// in view (1,1); in view (r,c) a layer with disparity d appears shifted by
/// (-(r-1)*round(d), -(c-1)*round(d)) pixels. Snapping happens per unit view
/// step so the rendered parallax agrees exactly with chained single-step
/// label projection, which keeps the ground truth discrete-exact.
///
/// Textures are sampled in layer-local coordinates and therefore travel with
/// the layer across views. Later layers paint over earlier ones; the ground
/// truth label of a pixel is 1 + index of the front-most covering layer, or
/// 0 for the background.

enum class TextureKind { kFlat, kGradient, kNoise };

struct Texture {
  TextureKind kind = TextureKind::kFlat;
  double gx = 0.0;          // gradient slope per pixel, x direction
  double gy = 0.0;          // gradient slope per pixel, y direction
  double amplitude = 0.0;   // noise amplitude
  uint64_t seed = 0;        // noise seed
};

enum class ShapeKind { kRect, kEllipse };

struct Layer {
  ShapeKind shape = ShapeKind::kRect;
  // Rect: top-left (y, x) and size. Ellipse: center (cy, cx) and radii.
  int y = 0, x = 0, h = 0, w = 0;
  double cy = 0.0, cx = 0.0, ry = 0.0, rx = 0.0;
  double disparity = 0.0;
  int intensity = 128;
  Texture texture;
};

struct SceneSpec {
  int grid_rows = 0;
  int grid_cols = 0;
  int view_height = 0;
  int view_width = 0;
  int background_intensity = 0;
  double background_disparity = 0.0;
  Texture background_texture;
  std::vector<Layer> layers;

  static SceneSpec from_json(const std::string& text);
  static SceneSpec from_json_file(const std::filesystem::path& path);
};

struct RenderedLightField {
  LightFieldGrid lf;
  std::vector<LabelMap> labels;        // ground truth, row-major by view
  std::vector<DisparityMap> disparity; // ground truth, row-major by view
};

/// Renders every view plus ground-truth label and disparity maps.
/// Throws DataError when a shape leaves the frame in any view.
RenderedLightField render_lf(const SceneSpec& spec);

/// Radial gain 1 - strength*(r/r_max)^2 about the image center; a corner at
/// strength 1 goes to zero, the exact center is never changed.
ViewImage apply_vignette(const ViewImage& img, double strength);

/// out = round(255 * (in/255)^(1/gamma)); gamma must be positive.
ViewImage gamma_correct(const ViewImage& img, double gamma);

/// Adds seeded Gaussian noise, deterministic in raster order for a given
/// seed regardless of platform.
DisparityMap perturb_disparity(const DisparityMap& map, double sigma,
                               uint64_t seed);

}  // namespace lfgc

#endif
