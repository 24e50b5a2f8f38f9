// Copyright 2026 The lfgc Authors
// SPDX-License-Identifier: Apache-2.0

#include "lfgc/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "lfgc/errors.hpp"

namespace lfgc {

using nlohmann::json;

namespace {

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Position-hashed uniform in [-1, 1); stable across platforms and
// independent of evaluation order, so a texture travels with its layer.
double hash_noise(uint64_t seed, int64_t y, int64_t x) {
  uint64_t h = splitmix64(seed ^ splitmix64(static_cast<uint64_t>(y) * 2654435761ULL ^
                                            static_cast<uint64_t>(x)));
  return static_cast<double>(h >> 11) * (2.0 / 9007199254740992.0) - 1.0;
}

uint8_t clamp_u8(double v) {
  return static_cast<uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

double texture_value(const Texture& t, int base, int64_t ly, int64_t lx) {
  switch (t.kind) {
    case TextureKind::kFlat:
      return base;
    case TextureKind::kGradient:
      return base + t.gx * static_cast<double>(lx) +
             t.gy * static_cast<double>(ly);
    case TextureKind::kNoise:
      return base + t.amplitude * hash_noise(t.seed, ly, lx);
  }
  return base;
}

int snap(double d) { return static_cast<int>(std::lround(d)); }

bool layer_covers(const Layer& l, int ly, int lx) {
  if (l.shape == ShapeKind::kRect) {
    return ly >= l.y && ly < l.y + l.h && lx >= l.x && lx < l.x + l.w;
  }
  if (l.ry <= 0.0 || l.rx <= 0.0) return false;
  const double dy = (ly - l.cy) / l.ry;
  const double dx = (lx - l.cx) / l.rx;
  return dy * dy + dx * dx <= 1.0;
}

void check_layer_bounds(const SceneSpec& spec, const Layer& l, size_t index) {
  int y0, y1, x0, x1;  // inclusive bounding box in view (1,1)
  if (l.shape == ShapeKind::kRect) {
    if (l.h <= 0 || l.w <= 0) {
      throw DataError("layer " + std::to_string(index) + ": empty rect");
    }
    y0 = l.y;
    y1 = l.y + l.h - 1;
    x0 = l.x;
    x1 = l.x + l.w - 1;
  } else {
    if (l.ry <= 0.0 || l.rx <= 0.0) {
      throw DataError("layer " + std::to_string(index) + ": empty ellipse");
    }
    y0 = static_cast<int>(std::floor(l.cy - l.ry));
    y1 = static_cast<int>(std::ceil(l.cy + l.ry));
    x0 = static_cast<int>(std::floor(l.cx - l.rx));
    x1 = static_cast<int>(std::ceil(l.cx + l.rx));
  }
  const int s = snap(l.disparity);
  const int max_step_r = spec.grid_rows - 1;
  const int max_step_c = spec.grid_cols - 1;
  const int shift_min_r = std::min(0, -max_step_r * s);
  const int shift_max_r = std::max(0, -max_step_r * s);
  const int shift_min_c = std::min(0, -max_step_c * s);
  const int shift_max_c = std::max(0, -max_step_c * s);
  if (y0 + shift_min_r < 0 || y1 + shift_max_r >= spec.view_height ||
      x0 + shift_min_c < 0 || x1 + shift_max_c >= spec.view_width) {
    throw DataError("layer " + std::to_string(index) +
                    ": shape leaves the frame under the grid's view shifts");
  }
}

Texture texture_from_json(const json& j) {
  Texture t;
  const std::string kind = j.value("kind", "flat");
  if (kind == "flat") {
    t.kind = TextureKind::kFlat;
  } else if (kind == "gradient") {
    t.kind = TextureKind::kGradient;
    t.gx = j.value("gx", 0.0);
    t.gy = j.value("gy", 0.0);
  } else if (kind == "noise") {
    t.kind = TextureKind::kNoise;
    t.amplitude = j.value("amplitude", 0.0);
    t.seed = j.value("seed", uint64_t{0});
  } else {
    throw DataError("unknown texture kind '" + kind + "'");
  }
  return t;
}

}  // namespace

SceneSpec SceneSpec::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw DataError(std::string("scene spec: ") + e.what());
  }
  SceneSpec spec;
  try {
    spec.grid_rows = j.at("grid").at("rows").get<int>();
    spec.grid_cols = j.at("grid").at("cols").get<int>();
    spec.view_height = j.at("view").at("height").get<int>();
    spec.view_width = j.at("view").at("width").get<int>();
    const json& bg = j.at("background");
    spec.background_intensity = bg.at("intensity").get<int>();
    spec.background_disparity = bg.value("disparity", 0.0);
    if (bg.contains("texture")) {
      spec.background_texture = texture_from_json(bg.at("texture"));
    }
    for (const json& jl : j.value("layers", json::array())) {
      Layer l;
      const std::string shape = jl.at("shape").get<std::string>();
      if (shape == "rect") {
        l.shape = ShapeKind::kRect;
        l.y = jl.at("y").get<int>();
        l.x = jl.at("x").get<int>();
        l.h = jl.at("h").get<int>();
        l.w = jl.at("w").get<int>();
      } else if (shape == "ellipse") {
        l.shape = ShapeKind::kEllipse;
        l.cy = jl.at("cy").get<double>();
        l.cx = jl.at("cx").get<double>();
        l.ry = jl.at("ry").get<double>();
        l.rx = jl.at("rx").get<double>();
      } else {
        throw DataError("unknown shape '" + shape + "'");
      }
      l.disparity = jl.at("disparity").get<double>();
      l.intensity = jl.at("intensity").get<int>();
      if (jl.contains("texture")) l.texture = texture_from_json(jl.at("texture"));
      spec.layers.push_back(l);
    }
  } catch (const json::exception& e) {
    throw DataError(std::string("scene spec: ") + e.what());
  }
  return spec;
}

SceneSpec SceneSpec::from_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return from_json(text);
}

RenderedLightField render_lf(const SceneSpec& spec) {
  if (spec.grid_rows <= 0 || spec.grid_cols <= 0 || spec.view_height <= 0 ||
      spec.view_width <= 0) {
    throw DataError("scene spec: empty grid or view");
  }
  for (size_t i = 0; i < spec.layers.size(); ++i) {
    check_layer_bounds(spec, spec.layers[i], i);
  }

  RenderedLightField out;
  out.lf = LightFieldGrid(spec.grid_rows, spec.grid_cols, spec.view_height,
                          spec.view_width);
  const int n_labels = static_cast<int>(spec.layers.size()) + 1;
  out.labels.reserve(out.lf.view_count());
  out.disparity.reserve(out.lf.view_count());

  const int bg_snap = snap(spec.background_disparity);
  for (int r = 1; r <= spec.grid_rows; ++r) {
    for (int c = 1; c <= spec.grid_cols; ++c) {
      ViewImage& img = out.lf.view({r, c});
      LabelMap lm(spec.view_height, spec.view_width, n_labels, 0);
      DisparityMap dm(spec.view_height, spec.view_width,
                      static_cast<float>(spec.background_disparity));
      for (int y = 0; y < spec.view_height; ++y) {
        for (int x = 0; x < spec.view_width; ++x) {
          // Background local coordinates follow the same shift rule.
          const int64_t by = y + static_cast<int64_t>(r - 1) * bg_snap;
          const int64_t bx = x + static_cast<int64_t>(c - 1) * bg_snap;
          img.at(y, x) = clamp_u8(texture_value(
              spec.background_texture, spec.background_intensity, by, bx));
        }
      }
      // Painter's order: later layers are nearer and overwrite.
      for (size_t li = 0; li < spec.layers.size(); ++li) {
        const Layer& l = spec.layers[li];
        const int s = snap(l.disparity);
        const int dy = -(r - 1) * s;
        const int dx = -(c - 1) * s;
        for (int y = 0; y < spec.view_height; ++y) {
          for (int x = 0; x < spec.view_width; ++x) {
            const int ly = y - dy;
            const int lx = x - dx;
            if (!layer_covers(l, ly, lx)) continue;
            img.at(y, x) =
                clamp_u8(texture_value(l.texture, l.intensity, ly, lx));
            lm.labels.at(y, x) = static_cast<int32_t>(li) + 1;
            dm.at(y, x) = static_cast<float>(l.disparity);
          }
        }
      }
      out.labels.push_back(std::move(lm));
      out.disparity.push_back(std::move(dm));
    }
  }
  return out;
}

ViewImage apply_vignette(const ViewImage& img, double strength) {
  const double cy = (img.height() - 1) / 2.0;
  const double cx = (img.width() - 1) / 2.0;
  const double r_max2 = cy * cy + cx * cx;
  ViewImage out(img.height(), img.width());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      const double r2 = (y - cy) * (y - cy) + (x - cx) * (x - cx);
      const double gain = r_max2 > 0.0 ? 1.0 - strength * (r2 / r_max2) : 1.0;
      out.at(y, x) = clamp_u8(img.at(y, x) * gain);
    }
  }
  return out;
}

ViewImage gamma_correct(const ViewImage& img, double gamma) {
  if (gamma <= 0.0) throw std::invalid_argument("gamma must be positive");
  ViewImage out(img.height(), img.width());
  uint8_t lut[256];
  for (int v = 0; v < 256; ++v) {
    lut[v] = clamp_u8(255.0 * std::pow(v / 255.0, 1.0 / gamma));
  }
  for (size_t i = 0; i < img.size(); ++i) out.data()[i] = lut[img.data()[i]];
  return out;
}

DisparityMap perturb_disparity(const DisparityMap& map, double sigma,
                               uint64_t seed) {
  if (sigma < 0.0) throw std::invalid_argument("sigma must be non-negative");
  DisparityMap out = map;
  // Box-Muller over splitmix64 streams; self-contained so the sequence is
  // identical on every platform.
  uint64_t state = splitmix64(seed ^ 0x5bf0f1e4a2c9d3b7ULL);
  auto next_u01 = [&state]() {
    state = splitmix64(state);
    return (static_cast<double>(state >> 11) + 0.5) * (1.0 / 9007199254740992.0);
  };
  const size_t n = out.size();
  for (size_t i = 0; i < n; i += 2) {
    const double u1 = next_u01();
    const double u2 = next_u01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double a = radius * std::cos(2.0 * M_PI * u2);
    const double b = radius * std::sin(2.0 * M_PI * u2);
    out.data()[i] += static_cast<float>(sigma * a);
    if (i + 1 < n) out.data()[i + 1] += static_cast<float>(sigma * b);
  }
  return out;
}

}  // namespace lfgc
