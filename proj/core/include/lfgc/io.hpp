// Copyright 2026 The lfgc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef LFGC_IO_HPP
#define LFGC_IO_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lfgc/image.hpp"
#include "lfgc/light_field.hpp"

namespace lfgc {

/// On-disk light field layout inside one directory:
///   lf.json                manifest {n_rows, n_cols, height, width, bit_depth}
///   view_RR_CC.pgm         8-bit P5 luminance, 1-based zero-padded indices
///   disp_RR_CC.pfm         optional float disparity, PFM single channel
///   labels_RR_CC.pgm/.json optional label map, 16-bit P5 plus sidecar

std::string view_file_name(ViewIndex v);
std::string disparity_file_name(ViewIndex v);
std::string label_file_name(ViewIndex v);

ViewImage read_pgm(const std::filesystem::path& path);
void write_pgm(const std::filesystem::path& path, const ViewImage& img);

Image<uint16_t> read_pgm16(const std::filesystem::path& path);
void write_pgm16(const std::filesystem::path& path, const Image<uint16_t>& img);

/// P6 reader; returns the three 8-bit planes in r, g, b.
void read_ppm(const std::filesystem::path& path, Image<uint8_t>& r,
              Image<uint8_t>& g, Image<uint8_t>& b);

/// Single-channel little-endian PFM, scanlines stored bottom to top.
DisparityMap read_pfm(const std::filesystem::path& path);
void write_pfm(const std::filesystem::path& path, const DisparityMap& map);

struct LightFieldManifest {
  int n_rows = 0;
  int n_cols = 0;
  int height = 0;
  int width = 0;
  int bit_depth = 8;
};

LightFieldManifest read_manifest(const std::filesystem::path& dir);
void write_manifest(const std::filesystem::path& dir,
                    const LightFieldManifest& m);

/// Loads the manifest and every view; a missing or unreadable view file
/// leaves an empty slot for validate_grid to report. PPM views are converted
/// to luminance on ingest when a PGM of the same index is absent.
LightFieldGrid load_light_field(const std::filesystem::path& dir);
void save_light_field(const std::filesystem::path& dir,
                      const LightFieldGrid& lf);

/// nullopt when no disparity file exists for the view.
std::optional<DisparityMap> load_disparity(const std::filesystem::path& dir,
                                           ViewIndex v);
void save_disparity(const std::filesystem::path& dir, ViewIndex v,
                    const DisparityMap& map);

std::optional<LabelMap> load_label_map(const std::filesystem::path& dir,
                                       ViewIndex v);
void save_label_map(const std::filesystem::path& dir, ViewIndex v,
                    const LabelMap& map);

/// Per-label aggregate table as JSON.
void save_superray_table(const std::filesystem::path& path,
                         const SuperRayTable& table);
SuperRayTable load_superray_table(const std::filesystem::path& path);

std::vector<uint8_t> read_binary_file(const std::filesystem::path& path);
void write_binary_file(const std::filesystem::path& path,
                       const std::vector<uint8_t>& bytes);

}  // namespace lfgc

#endif
