// Copyright 2026 The lfgc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef LFGC_LIGHT_FIELD_HPP
#define LFGC_LIGHT_FIELD_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "lfgc/image.hpp"

namespace lfgc {

/// 1-based angular position inside the view grid.
struct ViewIndex {
  int row = 1;
  int col = 1;

  friend bool operator==(const ViewIndex&, const ViewIndex&) = default;
  friend auto operator<=>(const ViewIndex&, const ViewIndex&) = default;
};

std::string to_string(const ViewIndex& v);

/// N x M grid of 8-bit luminance views, row-major. Slots may hold empty
/// images when a view is missing on disk; validate_grid reports that.
struct LightFieldGrid {
  int n_rows = 0;
  int n_cols = 0;
  int height = 0;
  int width = 0;
  std::vector<ViewImage> views;

  LightFieldGrid() = default;
  LightFieldGrid(int rows, int cols, int h, int w)
      : n_rows(rows), n_cols(cols), height(h), width(w),
        views(static_cast<size_t>(rows) * cols, ViewImage(h, w)) {}

  size_t view_count() const { return views.size(); }

  bool has(ViewIndex v) const {
    return v.row >= 1 && v.row <= n_rows && v.col >= 1 && v.col <= n_cols;
  }

  ViewImage& view(ViewIndex v) {
    return views[static_cast<size_t>(v.row - 1) * n_cols + (v.col - 1)];
  }
  const ViewImage& view(ViewIndex v) const {
    return views[static_cast<size_t>(v.row - 1) * n_cols + (v.col - 1)];
  }
};

/// Per-view segmentation labels. Labels are dense ids 0..n_labels-1; kHole
/// marks pixels not yet reached during projection and never leaves the
/// projection module.
struct LabelMap {
  static constexpr int32_t kHole = -1;

  Image<int32_t> labels;
  int n_labels = 0;

  LabelMap() = default;
  LabelMap(int height, int width, int count, int32_t fill = kHole)
      : labels(height, width, fill), n_labels(count) {}

  friend bool operator==(const LabelMap&, const LabelMap&) = default;
};

/// Per-label statistics of a segmented reference view. Membership itself is
/// carried by the per-view LabelMaps; this table holds the aggregates the
/// pipeline needs (pixel count, median and mean disparity).
struct SuperRayEntry {
  int64_t count = 0;
  float median_disparity = 0.0f;
  float mean_disparity = 0.0f;

  friend bool operator==(const SuperRayEntry&, const SuperRayEntry&) = default;
};

struct SuperRayTable {
  std::vector<SuperRayEntry> entries;

  int label_count() const { return static_cast<int>(entries.size()); }

  friend bool operator==(const SuperRayTable&, const SuperRayTable&) = default;
};

/// BT.709 luma from 8-bit RGB planes, rounded to nearest integer.
/// Throws DataError on channel dimension mismatch.
ViewImage luminance_of(const Image<uint8_t>& r, const Image<uint8_t>& g,
                       const Image<uint8_t>& b);

/// Structural checks over a grid: declared dimensions, per-view sizes,
/// missing views. Returns human-readable findings, empty when consistent.
/// Never throws.
std::vector<std::string> validate_grid(const LightFieldGrid& lf);

}  // namespace lfgc

#endif
