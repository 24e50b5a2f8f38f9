// Copyright 2026 The lfgc Authors
// SPDX-License-Identifier: Apache-2.0

#include "lfgc/codec.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <limits>
#include <string>

#include "lfgc/entropy.hpp"
#include "lfgc/errors.hpp"
#include "lfgc/graph.hpp"
#include "lfgc/parallel.hpp"

namespace lfgc {

double quant_step(int qp) {
  if (qp < 0) throw DataError("quant step: qp must be >= 0");
  return std::exp2((qp - 4) / 6.0);
}

double QuantConfig::step_first() const {
  return no_quant ? kNoQuantStep : quant_step(qp_first);
}

double QuantConfig::step_rest() const {
  return no_quant ? kNoQuantStep : quant_step(qp_rest);
}

int64_t quantize(double value, double step) {
  if (step <= 0.0) throw DataError("quantize: step must be positive");
  return std::llround(value / step);
}

double dequantize(int64_t level, double step) {
  if (step <= 0.0) throw DataError("dequantize: step must be positive");
  return static_cast<double>(level) * step;
}

size_t group_begin(int group, size_t n) {
  if (group < 0 || group > kNumGroups) {
    throw InternalError("group index out of range");
  }
  return (n * static_cast<size_t>(group) + kNumGroups - 1) / kNumGroups;
}

float snap_disparity(float d) {
  return static_cast<float>(std::llround(d * 64.0)) / 64.0f;
}

namespace {

constexpr char kMagic[4] = {'L', 'F', 'G', 'C'};

struct ByteWriter {
  std::vector<uint8_t> out;

  void u8(uint8_t v) { out.push_back(v); }
  void u16(uint16_t v) {
    out.push_back(static_cast<uint8_t>(v));
    out.push_back(static_cast<uint8_t>(v >> 8));
  }
  void u32(uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
  }
  void u64(uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
  }
  void f32(float v) { u32(std::bit_cast<uint32_t>(v)); }
  void f64(double v) { u64(std::bit_cast<uint64_t>(v)); }
  void bytes(const uint8_t* data, size_t n) {
    out.insert(out.end(), data, data + n);
  }
};

struct ByteReader {
  const std::vector<uint8_t>& buf;
  size_t pos = 0;

  void need(size_t n) const {
    if (pos + n > buf.size()) {
      throw DataError("malformed stream at offset " + std::to_string(pos));
    }
  }
  uint8_t u8() {
    need(1);
    return buf[pos++];
  }
  uint16_t u16() {
    need(2);
    uint16_t v = static_cast<uint16_t>(buf[pos] | (buf[pos + 1] << 8));
    pos += 2;
    return v;
  }
  uint32_t u32() {
    need(4);
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(buf[pos + i]) << (8 * i);
    pos += 4;
    return v;
  }
  uint64_t u64() {
    need(8);
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(buf[pos + i]) << (8 * i);
    pos += 8;
    return v;
  }
  float f32() { return std::bit_cast<float>(u32()); }
  double f64() { return std::bit_cast<double>(u64()); }
  std::vector<uint8_t> bytes(size_t n) {
    need(n);
    std::vector<uint8_t> v(buf.begin() + static_cast<long>(pos),
                           buf.begin() + static_cast<long>(pos + n));
    pos += n;
    return v;
  }
};

}  // namespace

std::vector<uint8_t> encode_sideinfo(const LabelMap& labels,
                                     const SuperRayTable& table) {
  const int n_labels = labels.n_labels;
  if (n_labels < 1 ||
      static_cast<size_t>(n_labels) != table.entries.size()) {
    throw DataError("sideinfo: label count does not match table");
  }
  std::vector<uint8_t> out;
  RangeEncoder rc(out);
  std::vector<BitModel> meta_ctx(kEgContexts);
  std::vector<BitModel> label_ctx(kEgContexts);
  std::vector<BitModel> disp_ctx(kEgContexts);
  BitModel same_left, same_up;

  encode_eg0(rc, meta_ctx, static_cast<uint64_t>(n_labels));
  const Image<int32_t>& m = labels.labels;
  for (int y = 0; y < m.height(); ++y) {
    for (int x = 0; x < m.width(); ++x) {
      const int32_t l = m.at(y, x);
      if (l < 0 || l >= n_labels) {
        throw DataError("sideinfo: label " + std::to_string(l) +
                        " out of range");
      }
      if (x > 0) {
        const int same = l == m.at(y, x - 1);
        rc.encode_bit(same_left, same);
        if (same) continue;
      }
      if (y > 0) {
        const int same = l == m.at(y - 1, x);
        rc.encode_bit(same_up, same);
        if (same) continue;
      }
      encode_eg0(rc, label_ctx, static_cast<uint64_t>(l));
    }
  }
  for (const SuperRayEntry& e : table.entries) {
    const int64_t d64 = std::llround(e.median_disparity * 64.0);
    encode_eg0(rc, disp_ctx, zigzag_encode(d64));
  }
  rc.finish();
  return out;
}

std::pair<LabelMap, SuperRayTable> decode_sideinfo(
    const std::vector<uint8_t>& bytes, int height, int width) {
  if (height < 1 || width < 1) throw DataError("sideinfo: bad dimensions");
  RangeDecoder rc(bytes.data(), bytes.size());
  std::vector<BitModel> meta_ctx(kEgContexts);
  std::vector<BitModel> label_ctx(kEgContexts);
  std::vector<BitModel> disp_ctx(kEgContexts);
  BitModel same_left, same_up;

  const uint64_t n_labels = decode_eg0(rc, meta_ctx);
  if (n_labels < 1 || n_labels > static_cast<uint64_t>(height) * width) {
    throw DataError("sideinfo: implausible label count " +
                    std::to_string(n_labels));
  }
  LabelMap labels(height, width, static_cast<int>(n_labels));
  Image<int32_t>& m = labels.labels;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      if (x > 0 && rc.decode_bit(same_left)) {
        m.at(y, x) = m.at(y, x - 1);
        continue;
      }
      if (y > 0 && rc.decode_bit(same_up)) {
        m.at(y, x) = m.at(y - 1, x);
        continue;
      }
      const uint64_t l = decode_eg0(rc, label_ctx);
      if (l >= n_labels) {
        throw DataError("malformed stream at offset " +
                        std::to_string(rc.offset()));
      }
      m.at(y, x) = static_cast<int32_t>(l);
    }
  }
  SuperRayTable table;
  table.entries.resize(n_labels);
  for (SuperRayEntry& e : table.entries) {
    const int64_t d64 = zigzag_decode(decode_eg0(rc, disp_ctx));
    e.median_disparity = static_cast<float>(d64) / 64.0f;
    e.mean_disparity = e.median_disparity;
    e.count = 0;
  }
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      ++table.entries[static_cast<size_t>(m.at(y, x))].count;
    }
  }
  return {std::move(labels), std::move(table)};
}

std::vector<uint8_t> write_bitstream(const BitstreamSections& sections) {
  const BitstreamHeader& h = sections.header;
  if (sections.sideinfo.size() != h.plan.references.size() ||
      sections.blocks.size() != h.plan.blocks.size()) {
    throw InternalError("bitstream sections do not match plan");
  }
  ByteWriter w;
  w.bytes(reinterpret_cast<const uint8_t*>(kMagic), 4);
  w.u8(static_cast<uint8_t>(h.version));
  w.u16(static_cast<uint16_t>(h.n_rows));
  w.u16(static_cast<uint16_t>(h.n_cols));
  w.u16(static_cast<uint16_t>(h.height));
  w.u16(static_cast<uint16_t>(h.width));
  w.u8(static_cast<uint8_t>(h.scheme));
  w.u8(h.quant.no_quant ? 1 : 0);
  w.u16(static_cast<uint16_t>(h.quant.qp_first));
  w.u16(static_cast<uint16_t>(h.quant.qp_rest));
  w.f64(h.step_first);
  w.f64(h.step_rest);
  w.u32(static_cast<uint32_t>(h.max_nodes));
  w.f32(h.psnr_min);
  const std::string plan = plan_to_json(h.plan);
  w.u32(static_cast<uint32_t>(plan.size()));
  w.bytes(reinterpret_cast<const uint8_t*>(plan.data()), plan.size());
  w.u32(static_cast<uint32_t>(sections.sideinfo.size()));
  for (const auto& [view, bytes] : sections.sideinfo) {
    w.u16(static_cast<uint16_t>(view.row));
    w.u16(static_cast<uint16_t>(view.col));
    w.u32(static_cast<uint32_t>(bytes.size()));
    w.bytes(bytes.data(), bytes.size());
  }
  w.u32(static_cast<uint32_t>(sections.blocks.size()));
  for (const std::vector<uint8_t>& bytes : sections.blocks) {
    w.u32(static_cast<uint32_t>(bytes.size()));
    w.bytes(bytes.data(), bytes.size());
  }
  return std::move(w.out);
}

BitstreamSections read_bitstream(const std::vector<uint8_t>& bytes) {
  ByteReader r{bytes};
  BitstreamSections sections;
  BitstreamHeader& h = sections.header;
  const std::vector<uint8_t> magic = r.bytes(4);
  if (std::memcmp(magic.data(), kMagic, 4) != 0) {
    throw DataError("not an lfgc stream (bad magic)");
  }
  h.version = r.u8();
  if (h.version != kBitstreamVersion) {
    throw DataError("unsupported bitstream version " +
                    std::to_string(h.version));
  }
  h.n_rows = r.u16();
  h.n_cols = r.u16();
  h.height = r.u16();
  h.width = r.u16();
  const uint8_t scheme = r.u8();
  if (scheme > 2) throw DataError("malformed stream: unknown scheme tag");
  h.scheme = static_cast<Scheme>(scheme);
  const uint8_t flags = r.u8();
  h.quant.no_quant = (flags & 1) != 0;
  h.quant.qp_first = r.u16();
  h.quant.qp_rest = r.u16();
  h.step_first = r.f64();
  h.step_rest = r.f64();
  h.max_nodes = static_cast<int>(r.u32());
  h.psnr_min = r.f32();
  if (h.n_rows < 1 || h.n_cols < 1 || h.height < 1 || h.width < 1) {
    throw DataError("malformed stream: bad dimensions");
  }
  if (!(h.step_first > 0.0) || !(h.step_rest > 0.0)) {
    throw DataError("malformed stream: bad quantization steps");
  }
  const uint32_t plan_len = r.u32();
  const std::vector<uint8_t> plan_bytes = r.bytes(plan_len);
  h.plan = plan_from_json(
      std::string(plan_bytes.begin(), plan_bytes.end()));
  if (h.plan.scheme != h.scheme || h.plan.n_rows != h.n_rows ||
      h.plan.n_cols != h.n_cols) {
    throw DataError("malformed stream: plan disagrees with header");
  }
  const uint32_t n_refs = r.u32();
  if (n_refs != h.plan.references.size()) {
    throw DataError("malformed stream: reference count mismatch");
  }
  for (uint32_t i = 0; i < n_refs; ++i) {
    ViewIndex view{r.u16(), r.u16()};
    if (view != h.plan.references[i]) {
      throw DataError("malformed stream: reference order mismatch");
    }
    const uint32_t len = r.u32();
    sections.sideinfo.emplace_back(view, r.bytes(len));
  }
  const uint32_t n_blocks = r.u32();
  if (n_blocks != h.plan.blocks.size()) {
    throw DataError("malformed stream: block count mismatch");
  }
  for (uint32_t i = 0; i < n_blocks; ++i) {
    const uint32_t len = r.u32();
    sections.blocks.push_back(r.bytes(len));
  }
  if (r.pos != bytes.size()) {
    throw DataError("malformed stream: " +
                    std::to_string(bytes.size() - r.pos) + " trailing bytes");
  }
  return sections;
}

SegmentationSet segment_for_plan(
    const LightFieldGrid& lf, const ProjectionPlan& plan,
    const std::map<ViewIndex, DisparityMap>& disparity,
    const SlicParams& slic, int workers) {
  const size_t n = static_cast<size_t>(lf.n_rows) * lf.n_cols;
  SegmentationSet set;
  set.labels.resize(n);
  parallel_for(n, workers, [&](size_t i) {
    const ViewIndex v{static_cast<int>(i) / lf.n_cols + 1,
                      static_cast<int>(i) % lf.n_cols + 1};
    set.labels[i] = slic_segment(lf.view(v), slic);
  });
  for (const ViewIndex& ref : plan.references) {
    const auto it = disparity.find(ref);
    if (it == disparity.end()) {
      throw DataError("missing disparity for reference " + to_string(ref));
    }
    const size_t i = static_cast<size_t>(ref.row - 1) * lf.n_cols + (ref.col - 1);
    SuperRayTable table = median_disparity_per_label(set.labels[i], it->second);
    for (SuperRayEntry& e : table.entries) {
      e.median_disparity = snap_disparity(e.median_disparity);
    }
    set.tables[ref] = std::move(table);
  }
  return set;
}

namespace {

ProjectionPlan make_plan(const LightFieldGrid& lf,
                         const std::map<ViewIndex, DisparityMap>& disparity,
                         const EncodeParams& params, int* k_h_out,
                         int* k_v_out) {
  switch (params.scheme) {
    case Scheme::kTopLeft:
      if (params.auto_refs) {
        throw DataError("auto reference selection needs the multiview scheme");
      }
      return plan_topleft(lf.n_rows, lf.n_cols);
    case Scheme::kCenter:
      if (params.auto_refs) {
        throw DataError("auto reference selection needs the multiview scheme");
      }
      return plan_center(lf.n_rows, lf.n_cols);
    case Scheme::kMultiView:
      break;
  }
  int k_h = params.k_h;
  int k_v = params.k_v;
  if (params.auto_refs) {
    const ProjectionPlan probe = plan_topleft(lf.n_rows, lf.n_cols);
    const SegmentationSet seg =
        segment_for_plan(lf, probe, disparity, params.slic, params.workers);
    const QualityMatrix qm = quality_matrix(probe, seg.labels, seg.tables);
    std::tie(k_h, k_v) = spacings_from_matrix(qm);
  }
  if (k_h_out != nullptr) *k_h_out = k_h;
  if (k_v_out != nullptr) *k_v_out = k_v;
  return plan_multiview(lf.n_rows, lf.n_cols, k_h, k_v);
}

// Quantized coefficients of one super-ray: every part transformed, the
// parts' spectra concatenated, group g quantized with its group's step.
struct CodedSuperRay {
  std::vector<uint8_t> decisions;
  std::vector<int64_t> levels;
};

CodedSuperRay code_superray(const SuperRayGraph& sr, const EncodeParams& params,
                            double step_first, double step_rest) {
  CodedSuperRay coded;
  // Lossless mode must not take lossy coarsening; only exact merges pass an
  // infinite threshold, everything else falls back to partitioning.
  const double psnr_min = params.quant.no_quant
                              ? std::numeric_limits<double>::infinity()
                              : params.psnr_min;
  ReducedGraphs reduced =
      coarsen_or_partition(sr, params.max_nodes, psnr_min);
  coded.decisions = std::move(reduced.decisions);
  std::vector<double> spectrum;
  for (const ReducedGraphs::Part& part : reduced.parts) {
    const SpectralBasis basis = compute_basis(part.graph);
    const std::vector<double> coeffs = gft(basis, part.graph.signal);
    spectrum.insert(spectrum.end(), coeffs.begin(), coeffs.end());
  }
  const size_t n = spectrum.size();
  coded.levels.resize(n);
  for (int g = 0; g < kNumGroups; ++g) {
    const double step = g == 0 ? step_first : step_rest;
    const size_t end = group_begin(g + 1, n);
    for (size_t j = group_begin(g, n); j < end; ++j) {
      coded.levels[j] = quantize(spectrum[j], step);
    }
  }
  return coded;
}

std::vector<uint8_t> code_block(const std::vector<CodedSuperRay>& coded) {
  std::vector<uint8_t> out;
  RangeEncoder rc(out);
  BitModel decision_model;
  std::vector<BitModel> coeff_ctx(kEgContexts);
  for (const CodedSuperRay& sr : coded) {
    for (uint8_t bit : sr.decisions) rc.encode_bit(decision_model, bit);
  }
  for (int g = 0; g < kNumGroups; ++g) {
    for (const CodedSuperRay& sr : coded) {
      const size_t end = group_begin(g + 1, sr.levels.size());
      for (size_t j = group_begin(g, sr.levels.size()); j < end; ++j) {
        encode_eg0(rc, coeff_ctx, zigzag_encode(sr.levels[j]));
      }
    }
  }
  rc.finish();
  return out;
}

}  // namespace

std::vector<uint8_t> encode_lightfield(
    const LightFieldGrid& lf,
    const std::map<ViewIndex, DisparityMap>& disparity,
    const EncodeParams& params) {
  const std::vector<std::string> problems = validate_grid(lf);
  if (!problems.empty()) {
    std::string joined = "encode: invalid light field";
    for (const std::string& p : problems) joined += "; " + p;
    throw DataError(joined);
  }
  if (params.workers < 1) throw DataError("encode: workers must be >= 1");

  BitstreamSections sections;
  BitstreamHeader& header = sections.header;
  header.n_rows = lf.n_rows;
  header.n_cols = lf.n_cols;
  header.height = lf.height;
  header.width = lf.width;
  header.scheme = params.scheme;
  header.quant = params.quant;
  header.step_first = params.quant.step_first();
  header.step_rest = params.quant.step_rest();
  header.max_nodes = params.max_nodes;
  header.psnr_min = static_cast<float>(params.psnr_min);
  header.plan = make_plan(lf, disparity, params, nullptr, nullptr);

  std::map<ViewIndex, LabelMap> ref_labels;
  std::map<ViewIndex, SuperRayTable> ref_tables;
  for (const ViewIndex& ref : header.plan.references) {
    const auto it = disparity.find(ref);
    if (it == disparity.end()) {
      throw DataError("missing disparity for reference " + to_string(ref));
    }
    LabelMap labels = slic_segment(lf.view(ref), params.slic);
    SuperRayTable table = median_disparity_per_label(labels, it->second);
    for (SuperRayEntry& e : table.entries) {
      e.median_disparity = snap_disparity(e.median_disparity);
    }
    sections.sideinfo.emplace_back(ref, encode_sideinfo(labels, table));
    ref_labels.emplace(ref, std::move(labels));
    ref_tables.emplace(ref, std::move(table));
  }

  const std::vector<LabelMap> labels =
      run_plan(header.plan, ref_labels, ref_tables);

  for (size_t b = 0; b < header.plan.blocks.size(); ++b) {
    const ProjectionPlan::Block& block = header.plan.blocks[b];
    const SubGlobalGraph sub = build_block_graph(
        lf, block, static_cast<int>(b), labels, ref_tables.at(block.reference));
    std::vector<CodedSuperRay> coded(sub.superrays.size());
    parallel_for(sub.superrays.size(), params.workers, [&](size_t i) {
      coded[i] = code_superray(sub.superrays[i], params, header.step_first,
                               header.step_rest);
    });
    sections.blocks.push_back(code_block(coded));
  }
  return write_bitstream(sections);
}

LightFieldGrid decode_lightfield(const std::vector<uint8_t>& stream,
                                 const DecodeOptions& options) {
  if (options.workers < 1) throw DataError("decode: workers must be >= 1");
  if (options.max_groups < 1 || options.max_groups > kNumGroups) {
    throw DataError("decode: max_groups out of range");
  }
  const BitstreamSections sections = read_bitstream(stream);
  const BitstreamHeader& header = sections.header;

  std::map<ViewIndex, LabelMap> ref_labels;
  std::map<ViewIndex, SuperRayTable> ref_tables;
  for (const auto& [view, bytes] : sections.sideinfo) {
    auto [labels, table] = decode_sideinfo(bytes, header.height, header.width);
    ref_labels.emplace(view, std::move(labels));
    ref_tables.emplace(view, std::move(table));
  }
  const std::vector<LabelMap> labels =
      run_plan(header.plan, ref_labels, ref_tables);

  LightFieldGrid recon;
  recon.n_rows = header.n_rows;
  recon.n_cols = header.n_cols;
  recon.height = header.height;
  recon.width = header.width;
  recon.views.assign(static_cast<size_t>(recon.n_rows) * recon.n_cols,
                     ViewImage(recon.height, recon.width));

  for (size_t b = 0; b < header.plan.blocks.size(); ++b) {
    const ProjectionPlan::Block& block = header.plan.blocks[b];
    const SubGlobalGraph sub =
        build_block_graph(recon, block, static_cast<int>(b), labels,
                          ref_tables.at(block.reference));
    const std::vector<uint8_t>& bytes = sections.blocks[b];
    RangeDecoder rc(bytes.data(), bytes.size());
    BitModel decision_model;
    std::vector<BitModel> coeff_ctx(kEgContexts);

    std::vector<ReducedGraphs> reduced(sub.superrays.size());
    std::vector<std::vector<int64_t>> levels(sub.superrays.size());
    for (size_t i = 0; i < sub.superrays.size(); ++i) {
      reduced[i] = replay_reduction(
          sub.superrays[i], header.max_nodes,
          [&]() { return rc.decode_bit(decision_model); });
      size_t n = 0;
      for (const ReducedGraphs::Part& part : reduced[i].parts) {
        n += part.graph.size();
      }
      levels[i].resize(n);
    }
    for (int g = 0; g < kNumGroups; ++g) {
      for (size_t i = 0; i < sub.superrays.size(); ++i) {
        const size_t end = group_begin(g + 1, levels[i].size());
        for (size_t j = group_begin(g, levels[i].size()); j < end; ++j) {
          const int64_t level = zigzag_decode(decode_eg0(rc, coeff_ctx));
          levels[i][j] = g < options.max_groups ? level : 0;
        }
      }
    }

    parallel_for(sub.superrays.size(), options.workers, [&](size_t i) {
      const SuperRayGraph& sr = sub.superrays[i];
      const size_t n = levels[i].size();
      std::vector<double> spectrum(n);
      for (int g = 0; g < kNumGroups; ++g) {
        const double step = g == 0 ? header.step_first : header.step_rest;
        const size_t end = group_begin(g + 1, n);
        for (size_t j = group_begin(g, n); j < end; ++j) {
          spectrum[j] = dequantize(levels[i][j], step);
        }
      }
      size_t offset = 0;
      for (const ReducedGraphs::Part& part : reduced[i].parts) {
        const SpectralBasis basis = compute_basis(part.graph);
        const std::vector<double> coeffs(
            spectrum.begin() + static_cast<long>(offset),
            spectrum.begin() + static_cast<long>(offset + part.graph.size()));
        offset += part.graph.size();
        const std::vector<double> values = igft(basis, coeffs);
        for (size_t c = 0; c < part.graph.size(); ++c) {
          const double v = std::clamp(values[c], 0.0, 255.0);
          const uint8_t byte = static_cast<uint8_t>(std::lround(v));
          for (int32_t fine : part.fine_nodes[c]) {
            const GraphNode& node = sr.nodes[static_cast<size_t>(fine)];
            recon.view(node.view).at(node.y, node.x) = byte;
          }
        }
      }
    });
  }
  return recon;
}

BitrateReport bitrate_report(const std::vector<uint8_t>& stream) {
  const BitstreamSections sections = read_bitstream(stream);
  const BitstreamHeader& h = sections.header;
  BitrateReport report;
  report.total_bytes = stream.size();
  report.header_bytes = 43;
  report.plan_bytes = 4 + plan_to_json(h.plan).size();
  report.sideinfo_total = 4;
  for (const auto& [view, bytes] : sections.sideinfo) {
    report.sideinfo_bytes.emplace_back(view, 8 + bytes.size());
    report.sideinfo_total += 8 + bytes.size();
  }
  report.coefficient_total = 4;
  for (const std::vector<uint8_t>& bytes : sections.blocks) {
    report.block_bytes.push_back(4 + bytes.size());
    report.coefficient_total += 4 + bytes.size();
  }
  if (report.header_bytes + report.plan_bytes + report.sideinfo_total +
          report.coefficient_total !=
      report.total_bytes) {
    throw InternalError("bitrate report sections do not sum to stream size");
  }
  report.n_pixels = static_cast<size_t>(h.n_rows) * h.n_cols * h.height *
                    h.width;
  const double denom = static_cast<double>(report.n_pixels);
  report.bpp = 8.0 * static_cast<double>(report.total_bytes) / denom;
  report.sideinfo_bpp =
      8.0 * static_cast<double>(report.sideinfo_total) / denom;
  report.coefficient_bpp =
      8.0 * static_cast<double>(report.coefficient_total) / denom;
  return report;
}

}  // namespace lfgc
