// Copyright 2026 The lfgc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef LFGC_SLIC_HPP
#define LFGC_SLIC_HPP

#include "lfgc/image.hpp"
#include "lfgc/light_field.hpp"

namespace lfgc {

/// Local k-means over (intensity, x, y) with distance
///   D = sqrt(d_lum^2 + (compactness/S)^2 * d_xy^2),  S = sqrt(pixels/n).
/// Seeds sit on an aspect-proportional grid; each iteration searches a
/// 2S x 2S window per cluster; equal distances go to the lower cluster id.
/// A connectivity pass then merges orphan fragments into the neighboring
/// region they touch the most (lower label on ties) and relabels the result
/// contiguously in raster-scan order of first occurrence.
struct SlicParams {
  int n_segments = 2000;
  double compactness = 30.0;
  int max_iterations = 10;
};

/// Deterministic; output labels are 0..K-1 with K <= n_segments, every label
/// nonempty and 4-connected. Throws when n_segments < 1 or exceeds the pixel
/// count.
LabelMap slic_segment(const ViewImage& img, const SlicParams& params);

/// Median (lower median on even counts) and mean disparity per label.
/// Throws when the map sizes differ or a label is empty.
SuperRayTable median_disparity_per_label(const LabelMap& labels,
                                         const DisparityMap& disparity);

/// Mean squared deviation of the k-step shift k*d_i around its mean; equal
/// to k^2 times the value at k=1. Uses the mean as the central estimate.
double median_disparity_error(const std::vector<double>& disparities, int k);

}  // namespace lfgc

#endif
