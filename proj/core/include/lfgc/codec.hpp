// Copyright 2026 The lfgc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef LFGC_CODEC_HPP
#define LFGC_CODEC_HPP

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "lfgc/light_field.hpp"
#include "lfgc/projection.hpp"
#include "lfgc/slic.hpp"

namespace lfgc {

inline constexpr int kNumGroups = 32;
inline constexpr int kBitstreamVersion = 1;

/// Step size 1.0 at qp 4, doubling every 6 qp.
double quant_step(int qp);

/// Stand-in step for lossless mode: far below the integer signal's
/// resolution, so dequantized values round back to the original bytes.
inline constexpr double kNoQuantStep = 0x1p-26;

struct QuantConfig {
  int qp_first = 4;
  int qp_rest = 10;
  bool no_quant = false;

  double step_first() const;
  double step_rest() const;
};

int64_t quantize(double value, double step);
double dequantize(int64_t level, double step);

/// First coefficient index of `group` for a super-ray of n coefficients.
/// Group g covers [group_begin(g, n), group_begin(g + 1, n)); group 0 is
/// never empty for n >= 1, trailing groups may be.
size_t group_begin(int group, size_t n);

/// Median disparities travel at 1/64-pixel resolution. The encoder snaps
/// them before any projection so both sides build identical graphs.
float snap_disparity(float d);

/// Side information for one reference view: the label count, the label map
/// as a per-pixel transition chain (same-as-left / same-as-up / explicit
/// label), and the snapped median disparity per label, all range-coded.
/// Decoding recovers counts by tallying the map; means are not transmitted
/// and are set to the median.
std::vector<uint8_t> encode_sideinfo(const LabelMap& labels,
                                     const SuperRayTable& table);
std::pair<LabelMap, SuperRayTable> decode_sideinfo(
    const std::vector<uint8_t>& bytes, int height, int width);

struct EncodeParams {
  Scheme scheme = Scheme::kTopLeft;
  int k_h = 4;
  int k_v = 4;
  bool auto_refs = false;
  QuantConfig quant;
  int max_nodes = 4096;
  double psnr_min = 50.0;
  SlicParams slic;
  int workers = 1;
};

struct DecodeOptions {
  int max_groups = kNumGroups;  // coefficients of later groups are zeroed
  int workers = 1;
};

/// Container layout (all integers little-endian):
///   "LFGC"  u8 version
///   u16 n_rows  u16 n_cols  u16 height  u16 width
///   u8 scheme  u8 flags (bit 0: no_quant)
///   u16 qp_first  u16 qp_rest  f64 step_first  f64 step_rest
///   u32 max_nodes  f32 psnr_min
///   u32 plan length, plan JSON
///   u32 reference count, then per reference: u16 row, u16 col,
///     u32 length, sideinfo bytes
///   u32 block count, then per block: u32 length, coefficient bytes
/// Each block's coefficient bytes hold one range-coded stream: first every
/// super-ray's reduction decision bits, then all quantized coefficients in
/// group-major order (group, then super-ray, then coefficient).
struct BitstreamHeader {
  int version = kBitstreamVersion;
  int n_rows = 0;
  int n_cols = 0;
  int height = 0;
  int width = 0;
  Scheme scheme = Scheme::kTopLeft;
  QuantConfig quant;
  double step_first = 0.0;
  double step_rest = 0.0;
  int max_nodes = 0;
  float psnr_min = 0.0f;
  ProjectionPlan plan;
};

struct BitstreamSections {
  BitstreamHeader header;
  std::vector<std::pair<ViewIndex, std::vector<uint8_t>>> sideinfo;
  std::vector<std::vector<uint8_t>> blocks;
};

std::vector<uint8_t> write_bitstream(const BitstreamSections& sections);
BitstreamSections read_bitstream(const std::vector<uint8_t>& bytes);

/// Per-view SLIC segmentations over the whole grid plus snapped median
/// disparity tables at the plan's references; the projection-analysis
/// ground truth when no authored labels exist.
struct SegmentationSet {
  std::vector<LabelMap> labels;
  std::map<ViewIndex, SuperRayTable> tables;
};
SegmentationSet segment_for_plan(const LightFieldGrid& lf,
                                 const ProjectionPlan& plan,
                                 const std::map<ViewIndex, DisparityMap>& disparity,
                                 const SlicParams& slic, int workers = 1);

/// Full pipeline: segment the references, project labels along the plan,
/// build per-block super-ray graphs, reduce, transform, quantize and
/// entropy-code. Disparity maps are required at every reference view.
std::vector<uint8_t> encode_lightfield(
    const LightFieldGrid& lf,
    const std::map<ViewIndex, DisparityMap>& disparity,
    const EncodeParams& params);

LightFieldGrid decode_lightfield(const std::vector<uint8_t>& stream,
                                 const DecodeOptions& options = {});

struct BitrateReport {
  size_t total_bytes = 0;
  size_t header_bytes = 0;
  size_t plan_bytes = 0;
  std::vector<std::pair<ViewIndex, size_t>> sideinfo_bytes;
  std::vector<size_t> block_bytes;
  size_t sideinfo_total = 0;
  size_t coefficient_total = 0;
  size_t n_pixels = 0;
  double bpp = 0.0;
  double sideinfo_bpp = 0.0;
  double coefficient_bpp = 0.0;
};

BitrateReport bitrate_report(const std::vector<uint8_t>& stream);

}  // namespace lfgc

#endif
