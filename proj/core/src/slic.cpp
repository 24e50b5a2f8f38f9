// Copyright 2026 The lfgc Authors
// SPDX-License-Identifier: Apache-2.0

#include "lfgc/slic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>

#include "lfgc/errors.hpp"

namespace lfgc {

namespace {

struct Cluster {
  double y = 0.0, x = 0.0, lum = 0.0;
};

// Largest component of each label keeps it; every other fragment is merged
// into the adjacent finalized region sharing the longest boundary.
LabelMap enforce_connectivity(const Image<int32_t>& labels, int n_clusters) {
  const int h = labels.height();
  const int w = labels.width();
  Image<int32_t> comp(h, w, -1);
  std::vector<int32_t> comp_label;
  std::vector<int> comp_size;
  std::vector<int> comp_first;  // raster index of first pixel, for ordering

  std::vector<std::pair<int, int>> stack;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (comp.at(y, x) >= 0) continue;
      const int32_t id = static_cast<int32_t>(comp_label.size());
      const int32_t lab = labels.at(y, x);
      comp_label.push_back(lab);
      comp_size.push_back(0);
      comp_first.push_back(y * w + x);
      stack.push_back({y, x});
      comp.at(y, x) = id;
      while (!stack.empty()) {
        auto [cy, cx] = stack.back();
        stack.pop_back();
        ++comp_size[id];
        const int ny[4] = {cy - 1, cy + 1, cy, cy};
        const int nx[4] = {cx, cx, cx - 1, cx + 1};
        for (int k = 0; k < 4; ++k) {
          if (ny[k] < 0 || ny[k] >= h || nx[k] < 0 || nx[k] >= w) continue;
          if (comp.at(ny[k], nx[k]) >= 0) continue;
          if (labels.at(ny[k], nx[k]) != lab) continue;
          comp.at(ny[k], nx[k]) = id;
          stack.push_back({ny[k], nx[k]});
        }
      }
    }
  }

  const int n_comp = static_cast<int>(comp_label.size());
  std::vector<int> keeper(n_clusters, -1);
  for (int id = 0; id < n_comp; ++id) {
    const int32_t lab = comp_label[id];
    if (keeper[lab] < 0 || comp_size[id] > comp_size[keeper[lab]] ||
        (comp_size[id] == comp_size[keeper[lab]] &&
         comp_first[id] < comp_first[keeper[lab]])) {
      keeper[lab] = id;
    }
  }

  std::vector<int32_t> final_label(n_comp, -1);
  for (int lab = 0; lab < n_clusters; ++lab) {
    if (keeper[lab] >= 0) final_label[keeper[lab]] = lab;
  }

  // Orphans join finalized neighbors round by round; contact length decides,
  // lower label breaks ties. The kept components guarantee progress.
  bool changed = true;
  while (changed) {
    changed = false;
    for (int id = 0; id < n_comp; ++id) {
      if (final_label[id] >= 0) continue;
      std::map<int32_t, int> contact;
      for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
          if (comp.at(y, x) != id) continue;
          const int ny[4] = {y - 1, y + 1, y, y};
          const int nx[4] = {x, x, x - 1, x + 1};
          for (int k = 0; k < 4; ++k) {
            if (ny[k] < 0 || ny[k] >= h || nx[k] < 0 || nx[k] >= w) continue;
            const int32_t nid = comp.at(ny[k], nx[k]);
            if (nid == id || final_label[nid] < 0) continue;
            ++contact[final_label[nid]];
          }
        }
      }
      if (contact.empty()) continue;
      int32_t best = -1;
      int best_contact = -1;
      for (const auto& [lab, len] : contact) {
        if (len > best_contact) {
          best = lab;
          best_contact = len;
        }
      }
      final_label[id] = best;
      changed = true;
    }
  }

  // Relabel contiguously by first raster occurrence.
  LabelMap out(h, w, 0);
  std::vector<int32_t> remap(n_clusters, -1);
  int32_t next = 0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int32_t lab = final_label[comp.at(y, x)];
      if (remap[lab] < 0) remap[lab] = next++;
      out.labels.at(y, x) = remap[lab];
    }
  }
  out.n_labels = next;
  return out;
}

}  // namespace

LabelMap slic_segment(const ViewImage& img, const SlicParams& params) {
  const int h = img.height();
  const int w = img.width();
  const int64_t pixels = static_cast<int64_t>(h) * w;
  if (pixels == 0) throw DataError("slic: empty image");
  if (params.n_segments < 1) throw DataError("slic: n_segments must be >= 1");
  if (params.n_segments > pixels) {
    throw DataError("slic: n_segments exceeds pixel count");
  }

  const double S = std::sqrt(static_cast<double>(pixels) / params.n_segments);

  // Aspect-proportional seed grid with n_x * n_y <= n_segments.
  int n_x = static_cast<int>(std::ceil(
      std::sqrt(static_cast<double>(params.n_segments) * w / h)));
  n_x = std::clamp(n_x, 1, std::min<int>(params.n_segments, w));
  int n_y = std::clamp(params.n_segments / n_x, 1, h);
  while (n_x * n_y > params.n_segments) --n_y;

  std::vector<Cluster> clusters;
  clusters.reserve(static_cast<size_t>(n_x) * n_y);
  for (int i = 0; i < n_y; ++i) {
    for (int j = 0; j < n_x; ++j) {
      Cluster c;
      c.y = (i + 0.5) * h / n_y - 0.5;
      c.x = (j + 0.5) * w / n_x - 0.5;
      const int py = std::clamp(static_cast<int>(std::lround(c.y)), 0, h - 1);
      const int px = std::clamp(static_cast<int>(std::lround(c.x)), 0, w - 1);
      c.y = py;
      c.x = px;
      c.lum = img.at(py, px);
      clusters.push_back(c);
    }
  }
  const int K = static_cast<int>(clusters.size());

  // Start from the seed-grid cell so every pixel always has an owner.
  Image<int32_t> assign(h, w);
  for (int y = 0; y < h; ++y) {
    const int i = std::min(n_y - 1, y * n_y / h);
    for (int x = 0; x < w; ++x) {
      const int j = std::min(n_x - 1, x * n_x / w);
      assign.at(y, x) = i * n_x + j;
    }
  }

  const double ratio2 = (params.compactness / S) * (params.compactness / S);
  Image<double> best_d(h, w);
  for (int iter = 0; iter < params.max_iterations; ++iter) {
    std::fill(best_d.pixels().begin(), best_d.pixels().end(),
              std::numeric_limits<double>::infinity());
    // Current assignment stays the fallback; its distance seeds the search.
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const Cluster& c = clusters[assign.at(y, x)];
        const double dl = img.at(y, x) - c.lum;
        const double dy = y - c.y;
        const double dx = x - c.x;
        best_d.at(y, x) = dl * dl + ratio2 * (dy * dy + dx * dx);
      }
    }
    bool moved = false;
    for (int k = 0; k < K; ++k) {
      const Cluster& c = clusters[k];
      const int y0 = std::max(0, static_cast<int>(std::floor(c.y - S)));
      const int y1 = std::min(h - 1, static_cast<int>(std::ceil(c.y + S)));
      const int x0 = std::max(0, static_cast<int>(std::floor(c.x - S)));
      const int x1 = std::min(w - 1, static_cast<int>(std::ceil(c.x + S)));
      for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
          const double dl = img.at(y, x) - c.lum;
          const double dy = y - c.y;
          const double dx = x - c.x;
          const double d = dl * dl + ratio2 * (dy * dy + dx * dx);
          // Strict improvement only: with clusters visited in id order this
          // sends ties to the lower cluster id.
          if (d < best_d.at(y, x)) {
            best_d.at(y, x) = d;
            if (assign.at(y, x) != k) {
              assign.at(y, x) = k;
              moved = true;
            }
          }
        }
      }
    }
    std::vector<double> sum_y(K, 0.0), sum_x(K, 0.0), sum_l(K, 0.0);
    std::vector<int64_t> count(K, 0);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const int k = assign.at(y, x);
        sum_y[k] += y;
        sum_x[k] += x;
        sum_l[k] += img.at(y, x);
        ++count[k];
      }
    }
    for (int k = 0; k < K; ++k) {
      if (count[k] == 0) continue;  // empty cluster keeps its center
      clusters[k].y = sum_y[k] / count[k];
      clusters[k].x = sum_x[k] / count[k];
      clusters[k].lum = sum_l[k] / count[k];
    }
    if (!moved) break;
  }

  return enforce_connectivity(assign, K);
}

SuperRayTable median_disparity_per_label(const LabelMap& labels,
                                         const DisparityMap& disparity) {
  if (labels.labels.height() != disparity.height() ||
      labels.labels.width() != disparity.width()) {
    throw DataError("median_disparity_per_label: map dimensions differ");
  }
  std::vector<std::vector<float>> values(labels.n_labels);
  for (int y = 0; y < disparity.height(); ++y) {
    for (int x = 0; x < disparity.width(); ++x) {
      const int32_t l = labels.labels.at(y, x);
      if (l < 0 || l >= labels.n_labels) {
        throw DataError("median_disparity_per_label: label out of range");
      }
      values[l].push_back(disparity.at(y, x));
    }
  }
  SuperRayTable table;
  table.entries.resize(labels.n_labels);
  for (int l = 0; l < labels.n_labels; ++l) {
    std::vector<float>& v = values[l];
    if (v.empty()) {
      throw DataError("median_disparity_per_label: empty label " +
                      std::to_string(l));
    }
    SuperRayEntry& e = table.entries[l];
    e.count = static_cast<int64_t>(v.size());
    const size_t mid = (v.size() - 1) / 2;  // lower median on even counts
    std::nth_element(v.begin(), v.begin() + mid, v.end());
    e.median_disparity = v[mid];
    double sum = 0.0;
    for (float f : v) sum += f;
    e.mean_disparity = static_cast<float>(sum / v.size());
  }
  return table;
}

double median_disparity_error(const std::vector<double>& disparities, int k) {
  if (disparities.empty()) {
    throw DataError("median_disparity_error: empty input");
  }
  if (k < 0) throw std::invalid_argument("k must be non-negative");
  const double n = static_cast<double>(disparities.size());
  double mean = 0.0;
  for (double d : disparities) mean += k * d;
  mean /= n;
  double mse = 0.0;
  for (double d : disparities) {
    const double dev = k * d - mean;
    mse += dev * dev;
  }
  return mse / n;
}

}  // namespace lfgc
