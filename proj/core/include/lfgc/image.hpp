// Copyright 2026 The lfgc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef LFGC_IMAGE_HPP
#define LFGC_IMAGE_HPP

#include <cassert>
#include <cstdint>
#include <vector>

namespace lfgc {

/// Dense row-major single-channel raster. A default-constructed image is
/// empty (0x0) and stands for a missing view in a sparse grid.
template <typename T>
class Image {
 public:
  Image() = default;
  Image(int height, int width, T fill = T{})
      : h_(height), w_(width),
        px_(static_cast<size_t>(height) * static_cast<size_t>(width), fill) {
    assert(height >= 0 && width >= 0);
  }

  int height() const { return h_; }
  int width() const { return w_; }
  size_t size() const { return px_.size(); }
  bool empty() const { return px_.empty(); }

  bool in_bounds(int y, int x) const {
    return y >= 0 && y < h_ && x >= 0 && x < w_;
  }

  T& at(int y, int x) {
    assert(in_bounds(y, x));
    return px_[static_cast<size_t>(y) * w_ + x];
  }
  const T& at(int y, int x) const {
    assert(in_bounds(y, x));
    return px_[static_cast<size_t>(y) * w_ + x];
  }

  T* data() { return px_.data(); }
  const T* data() const { return px_.data(); }
  std::vector<T>& pixels() { return px_; }
  const std::vector<T>& pixels() const { return px_; }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  int h_ = 0;
  int w_ = 0;
  std::vector<T> px_;
};

using ViewImage = Image<uint8_t>;
using DisparityMap = Image<float>;

}  // namespace lfgc

#endif
