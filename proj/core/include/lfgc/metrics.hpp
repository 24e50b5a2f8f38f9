// Copyright 2026 The lfgc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef LFGC_METRICS_HPP
#define LFGC_METRICS_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "lfgc/image.hpp"
#include "lfgc/light_field.hpp"

namespace lfgc {

/// Mean local SSIM over an 11x11 Gaussian window (sigma 1.5), K1=0.01,
/// K2=0.03, stabilizers C1=(K1*L)^2 and C2=(K2*L)^2 for dynamic range L.
/// Windows are cropped and renormalized at borders, so identical inputs
/// score exactly 1.0 at any image size. Throws on shape mismatch or L <= 0.
double ssim(const Image<double>& a, const Image<double>& b, double L);
double ssim(const ViewImage& a, const ViewImage& b, double L = 255.0);

/// PSNR with MSE pooled over every pixel of every view jointly,
/// 10*log10(255^2 / MSE); +infinity when the grids match exactly.
double psnr_y(const LightFieldGrid& orig, const LightFieldGrid& recon);

struct RdPoint {
  std::string scheme;
  int qp_first = 0;
  int qp_rest = 0;
  double bpp = 0.0;
  double psnr_y = 0.0;
  double enc_s = 0.0;
  double dec_s = 0.0;
};

/// Writes "scheme,qp_first,qp_rest,bpp,psnr_y,enc_s,dec_s" rows sorted by
/// ascending bpp, six decimal places. Infinite PSNR prints as "inf".
void emit_rd_csv(const std::filesystem::path& path,
                 std::vector<RdPoint> points);

std::vector<RdPoint> read_rd_csv(const std::filesystem::path& path);

}  // namespace lfgc

#endif
