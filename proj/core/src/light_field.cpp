// Copyright 2026 The lfgc Authors
// SPDX-License-Identifier: Apache-2.0

#include "lfgc/light_field.hpp"

#include <cmath>

#include "lfgc/errors.hpp"

namespace lfgc {

std::string to_string(const ViewIndex& v) {
  return "(" + std::to_string(v.row) + "," + std::to_string(v.col) + ")";
}

ViewImage luminance_of(const Image<uint8_t>& r, const Image<uint8_t>& g,
                       const Image<uint8_t>& b) {
  if (r.height() != g.height() || r.width() != g.width() ||
      r.height() != b.height() || r.width() != b.width()) {
    throw DataError("luminance_of: channel dimension mismatch");
  }
  ViewImage y(r.height(), r.width());
  for (size_t i = 0; i < r.size(); ++i) {
    const double v = 0.2126 * r.data()[i] + 0.7152 * g.data()[i] +
                     0.0722 * b.data()[i];
    y.data()[i] = static_cast<uint8_t>(std::lround(v));
  }
  return y;
}

std::vector<std::string> validate_grid(const LightFieldGrid& lf) {
  std::vector<std::string> report;
  if (lf.n_rows <= 0 || lf.n_cols <= 0) {
    report.push_back("grid has no views (n_rows=" + std::to_string(lf.n_rows) +
                     ", n_cols=" + std::to_string(lf.n_cols) + ")");
    return report;
  }
  if (lf.height <= 0 || lf.width <= 0) {
    report.push_back("invalid view dimensions (" + std::to_string(lf.height) +
                     "x" + std::to_string(lf.width) + ")");
  }
  const size_t expected = static_cast<size_t>(lf.n_rows) * lf.n_cols;
  if (lf.views.size() != expected) {
    report.push_back("view storage holds " + std::to_string(lf.views.size()) +
                     " slots, expected " + std::to_string(expected));
    return report;
  }
  for (int r = 1; r <= lf.n_rows; ++r) {
    for (int c = 1; c <= lf.n_cols; ++c) {
      const ViewIndex v{r, c};
      const ViewImage& img = lf.view(v);
      if (img.empty()) {
        report.push_back("missing view " + to_string(v));
      } else if (img.height() != lf.height || img.width() != lf.width) {
        report.push_back("view " + to_string(v) + ": size " +
                         std::to_string(img.height()) + "x" +
                         std::to_string(img.width()) + " does not match grid " +
                         std::to_string(lf.height) + "x" +
                         std::to_string(lf.width));
      }
    }
  }
  return report;
}

}  // namespace lfgc
