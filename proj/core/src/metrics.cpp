// Copyright 2026 The lfgc Authors
// SPDX-License-Identifier: Apache-2.0

#include "lfgc/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "lfgc/errors.hpp"

namespace lfgc {

namespace {

constexpr int kWindow = 11;
constexpr int kHalf = kWindow / 2;
constexpr double kSigma = 1.5;
constexpr double kK1 = 0.01;
constexpr double kK2 = 0.03;

const std::array<double, kWindow>& gaussian_taps() {
  static const std::array<double, kWindow> taps = [] {
    std::array<double, kWindow> t{};
    double sum = 0.0;
    for (int i = 0; i < kWindow; ++i) {
      const double d = i - kHalf;
      t[i] = std::exp(-(d * d) / (2.0 * kSigma * kSigma));
      sum += t[i];
    }
    for (double& v : t) v /= sum;
    return t;
  }();
  return taps;
}

// Separable Gaussian blur with the kernel cropped and renormalized where the
// window leaves the image. With a rectangular intersection the renormalized
// 2D kernel is exactly the product of the two renormalized 1D kernels.
Image<double> gaussian_blur(const Image<double>& src) {
  const auto& taps = gaussian_taps();
  const int h = src.height();
  const int w = src.width();
  Image<double> tmp(h, w);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0, wsum = 0.0;
      const int k0 = std::max(0, kHalf - x);
      const int k1 = std::min(kWindow, w - x + kHalf);
      for (int k = k0; k < k1; ++k) {
        acc += taps[k] * src.at(y, x + k - kHalf);
        wsum += taps[k];
      }
      tmp.at(y, x) = acc / wsum;
    }
  }
  Image<double> dst(h, w);
  for (int x = 0; x < w; ++x) {
    for (int y = 0; y < h; ++y) {
      double acc = 0.0, wsum = 0.0;
      const int k0 = std::max(0, kHalf - y);
      const int k1 = std::min(kWindow, h - y + kHalf);
      for (int k = k0; k < k1; ++k) {
        acc += taps[k] * tmp.at(y + k - kHalf, x);
        wsum += taps[k];
      }
      dst.at(y, x) = acc / wsum;
    }
  }
  return dst;
}

Image<double> hadamard(const Image<double>& a, const Image<double>& b) {
  Image<double> out(a.height(), a.width());
  for (size_t i = 0; i < a.size(); ++i) out.data()[i] = a.data()[i] * b.data()[i];
  return out;
}

}  // namespace

double ssim(const Image<double>& a, const Image<double>& b, double L) {
  if (a.height() != b.height() || a.width() != b.width()) {
    throw DataError("ssim: image dimensions differ");
  }
  if (L <= 0.0) throw DataError("ssim: dynamic range must be positive");
  if (a.empty()) throw DataError("ssim: empty image");

  const double c1 = (kK1 * L) * (kK1 * L);
  const double c2 = (kK2 * L) * (kK2 * L);

  const Image<double> mu_a = gaussian_blur(a);
  const Image<double> mu_b = gaussian_blur(b);
  const Image<double> e_aa = gaussian_blur(hadamard(a, a));
  const Image<double> e_bb = gaussian_blur(hadamard(b, b));
  const Image<double> e_ab = gaussian_blur(hadamard(a, b));

  double sum = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double ma = mu_a.data()[i];
    const double mb = mu_b.data()[i];
    const double va = e_aa.data()[i] - ma * ma;
    const double vb = e_bb.data()[i] - mb * mb;
    const double cov = e_ab.data()[i] - ma * mb;
    const double num = (2.0 * ma * mb + c1) * (2.0 * cov + c2);
    const double den = (ma * ma + mb * mb + c1) * (va + vb + c2);
    sum += num / den;
  }
  return sum / static_cast<double>(a.size());
}

double ssim(const ViewImage& a, const ViewImage& b, double L) {
  Image<double> da(a.height(), a.width());
  Image<double> db(b.height(), b.width());
  for (size_t i = 0; i < a.size(); ++i) da.data()[i] = a.data()[i];
  for (size_t i = 0; i < b.size(); ++i) db.data()[i] = b.data()[i];
  return ssim(da, db, L);
}

double psnr_y(const LightFieldGrid& orig, const LightFieldGrid& recon) {
  if (orig.n_rows != recon.n_rows || orig.n_cols != recon.n_cols ||
      orig.height != recon.height || orig.width != recon.width) {
    throw DataError("psnr_y: grid shapes differ");
  }
  double se = 0.0;
  size_t n = 0;
  for (size_t v = 0; v < orig.views.size(); ++v) {
    const ViewImage& a = orig.views[v];
    const ViewImage& b = recon.views[v];
    if (a.size() != b.size()) throw DataError("psnr_y: view size mismatch");
    for (size_t i = 0; i < a.size(); ++i) {
      const double d = static_cast<double>(a.data()[i]) - b.data()[i];
      se += d * d;
    }
    n += a.size();
  }
  if (n == 0) throw DataError("psnr_y: empty grids");
  const double mse = se / static_cast<double>(n);
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

void emit_rd_csv(const std::filesystem::path& path,
                 std::vector<RdPoint> points) {
  std::stable_sort(points.begin(), points.end(),
                   [](const RdPoint& a, const RdPoint& b) {
                     return a.bpp < b.bpp;
                   });
  std::ofstream out(path);
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  out << "scheme,qp_first,qp_rest,bpp,psnr_y,enc_s,dec_s\n";
  char buf[256];
  for (const RdPoint& p : points) {
    std::snprintf(buf, sizeof(buf), "%s,%d,%d,%.6f,%.6f,%.6f,%.6f",
                  p.scheme.c_str(), p.qp_first, p.qp_rest, p.bpp, p.psnr_y,
                  p.enc_s, p.dec_s);
    out << buf << "\n";
  }
  if (!out) throw DataError("write failed: " + path.string());
}

std::vector<RdPoint> read_rd_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw DataError(path.string() + ": empty file");
  std::vector<RdPoint> points;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string field;
    RdPoint p;
    try {
      std::getline(ss, p.scheme, ',');
      std::getline(ss, field, ',');
      p.qp_first = std::stoi(field);
      std::getline(ss, field, ',');
      p.qp_rest = std::stoi(field);
      std::getline(ss, field, ',');
      p.bpp = std::stod(field);
      std::getline(ss, field, ',');
      p.psnr_y = std::stod(field);
      std::getline(ss, field, ',');
      p.enc_s = std::stod(field);
      std::getline(ss, field, ',');
      p.dec_s = std::stod(field);
    } catch (const std::exception&) {
      throw DataError(path.string() + ": bad row '" + line + "'");
    }
    points.push_back(p);
  }
  return points;
}

}  // namespace lfgc
