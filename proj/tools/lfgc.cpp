// Copyright 2026 The lfgc Authors
// SPDX-License-Identifier: Apache-2.0

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lfgc/codec.hpp"
#include "lfgc/errors.hpp"
#include "lfgc/graph.hpp"
#include "lfgc/io.hpp"
#include "lfgc/metrics.hpp"
#include "lfgc/projection.hpp"
#include "lfgc/slic.hpp"
#include "lfgc/synth.hpp"

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

lfgc::LightFieldGrid load_valid_lf(const fs::path& dir) {
  lfgc::LightFieldGrid lf = lfgc::load_light_field(dir);
  const std::vector<std::string> problems = lfgc::validate_grid(lf);
  if (!problems.empty()) {
    std::string joined = dir.string() + ": invalid light field";
    for (const std::string& p : problems) joined += "\n  " + p;
    throw lfgc::DataError(joined);
  }
  return lf;
}

std::map<lfgc::ViewIndex, lfgc::DisparityMap> load_all_disparity(
    const fs::path& dir, const lfgc::LightFieldGrid& lf) {
  std::map<lfgc::ViewIndex, lfgc::DisparityMap> out;
  for (int r = 1; r <= lf.n_rows; ++r) {
    for (int c = 1; c <= lf.n_cols; ++c) {
      if (auto d = lfgc::load_disparity(dir, {r, c})) {
        out.emplace(lfgc::ViewIndex{r, c}, std::move(*d));
      }
    }
  }
  return out;
}

lfgc::ProjectionPlan plan_for(const std::string& scheme, int n_rows,
                              int n_cols, int k_h, int k_v) {
  switch (lfgc::scheme_from_string(scheme)) {
    case lfgc::Scheme::kTopLeft:
      return lfgc::plan_topleft(n_rows, n_cols);
    case lfgc::Scheme::kCenter:
      return lfgc::plan_center(n_rows, n_cols);
    case lfgc::Scheme::kMultiView:
      return lfgc::plan_multiview(n_rows, n_cols, k_h, k_v);
  }
  throw lfgc::InternalError("unreachable scheme");
}

// Ground-truth label maps shipped with the dataset, one per view, all
// sharing one label count.
std::vector<lfgc::LabelMap> load_gt_labels(const fs::path& dir,
                                           const lfgc::LightFieldGrid& lf) {
  std::vector<lfgc::LabelMap> labels;
  for (int r = 1; r <= lf.n_rows; ++r) {
    for (int c = 1; c <= lf.n_cols; ++c) {
      auto m = lfgc::load_label_map(dir, {r, c});
      if (!m) {
        throw lfgc::DataError("missing label map for view " +
                              lfgc::to_string({r, c}) + " in " + dir.string());
      }
      labels.push_back(std::move(*m));
    }
  }
  for (const lfgc::LabelMap& m : labels) {
    if (m.n_labels != labels.front().n_labels) {
      throw lfgc::DataError(dir.string() +
                            ": label maps disagree on label count");
    }
  }
  return labels;
}

std::map<lfgc::ViewIndex, lfgc::SuperRayTable> reference_tables(
    const fs::path& dir, const lfgc::ProjectionPlan& plan,
    const std::vector<lfgc::LabelMap>& labels) {
  std::map<lfgc::ViewIndex, lfgc::SuperRayTable> tables;
  for (const lfgc::ViewIndex& ref : plan.references) {
    const auto d = lfgc::load_disparity(dir, ref);
    if (!d) {
      throw lfgc::DataError("missing disparity for reference " +
                            lfgc::to_string(ref));
    }
    const size_t i =
        static_cast<size_t>(ref.row - 1) * plan.n_cols + (ref.col - 1);
    lfgc::SuperRayTable table = lfgc::median_disparity_per_label(labels[i], *d);
    for (lfgc::SuperRayEntry& e : table.entries) {
      e.median_disparity = lfgc::snap_disparity(e.median_disparity);
    }
    tables.emplace(ref, std::move(table));
  }
  return tables;
}

struct SynthArgs {
  std::string scene;
  std::string outdir;
  double vignette = 0.0;
  double gamma = 1.0;
  std::vector<int> perturb_view;
  double perturb_sigma = 0.0;
  uint64_t seed = 0;
};

int cmd_synth(const SynthArgs& args) {
  const lfgc::SceneSpec spec = lfgc::SceneSpec::from_json_file(args.scene);
  lfgc::RenderedLightField rendered = lfgc::render_lf(spec);
  if (args.vignette > 0.0) {
    for (lfgc::ViewImage& view : rendered.lf.views) {
      view = lfgc::apply_vignette(view, args.vignette);
    }
  }
  if (args.gamma != 1.0) {
    for (lfgc::ViewImage& view : rendered.lf.views) {
      view = lfgc::gamma_correct(view, args.gamma);
    }
  }
  if (!args.perturb_view.empty()) {
    const lfgc::ViewIndex v{args.perturb_view[0], args.perturb_view[1]};
    const size_t i = static_cast<size_t>(v.row - 1) * spec.grid_cols + (v.col - 1);
    if (v.row < 1 || v.row > spec.grid_rows || v.col < 1 ||
        v.col > spec.grid_cols) {
      throw lfgc::DataError("perturb view " + lfgc::to_string(v) +
                            " outside the grid");
    }
    rendered.disparity[i] =
        lfgc::perturb_disparity(rendered.disparity[i], args.perturb_sigma,
                                args.seed);
  }
  const fs::path dir(args.outdir);
  fs::create_directories(dir);
  lfgc::save_light_field(dir, rendered.lf);
  for (int r = 1; r <= spec.grid_rows; ++r) {
    for (int c = 1; c <= spec.grid_cols; ++c) {
      const size_t i = static_cast<size_t>(r - 1) * spec.grid_cols + (c - 1);
      lfgc::save_disparity(dir, {r, c}, rendered.disparity[i]);
      lfgc::save_label_map(dir, {r, c}, rendered.labels[i]);
    }
  }
  std::cout << "wrote " << spec.grid_rows << "x" << spec.grid_cols
            << " light field (" << spec.view_height << "x" << spec.view_width
            << ") to " << dir.string() << "\n";
  return 0;
}

struct SegmentArgs {
  std::string lfdir;
  std::vector<int> view{1, 1};
  lfgc::SlicParams slic;
  std::string out_labels;
  std::string out_table;
};

int cmd_segment(const SegmentArgs& args) {
  const lfgc::LightFieldGrid lf = load_valid_lf(args.lfdir);
  const lfgc::ViewIndex v{args.view[0], args.view[1]};
  const lfgc::LabelMap labels = lfgc::slic_segment(lf.view(v), args.slic);
  std::cout << "view " << lfgc::to_string(v) << ": " << labels.n_labels
            << " superpixels\n";
  if (!args.out_labels.empty()) {
    const fs::path out(args.out_labels);
    fs::create_directories(out);
    lfgc::save_label_map(out, v, labels);
  }
  if (!args.out_table.empty()) {
    const auto d = lfgc::load_disparity(args.lfdir, v);
    if (!d) {
      throw lfgc::DataError("superray table needs a disparity map for view " +
                            lfgc::to_string(v));
    }
    lfgc::SuperRayTable table = lfgc::median_disparity_per_label(labels, *d);
    for (lfgc::SuperRayEntry& e : table.entries) {
      e.median_disparity = lfgc::snap_disparity(e.median_disparity);
    }
    lfgc::save_superray_table(args.out_table, table);
  }
  return 0;
}

struct QualityMatrixArgs {
  std::string lfdir;
  std::string scheme = "topleft";
  int k_h = 4;
  int k_v = 4;
  std::string labels = "gt";
  lfgc::SlicParams slic;
  int workers = 1;
  std::string out;
};

int cmd_quality_matrix(const QualityMatrixArgs& args) {
  const lfgc::LightFieldGrid lf = load_valid_lf(args.lfdir);
  const lfgc::ProjectionPlan plan =
      plan_for(args.scheme, lf.n_rows, lf.n_cols, args.k_h, args.k_v);
  lfgc::QualityMatrix matrix;
  if (args.labels == "gt") {
    const std::vector<lfgc::LabelMap> labels = load_gt_labels(args.lfdir, lf);
    const auto tables = reference_tables(args.lfdir, plan, labels);
    matrix = lfgc::quality_matrix(plan, labels, tables);
  } else if (args.labels == "slic") {
    const auto disparity = load_all_disparity(args.lfdir, lf);
    const lfgc::SegmentationSet seg =
        lfgc::segment_for_plan(lf, plan, disparity, args.slic, args.workers);
    matrix = lfgc::quality_matrix(plan, seg.labels, seg.tables);
  } else {
    throw lfgc::DataError("--labels must be gt or slic");
  }
  if (!args.out.empty()) {
    lfgc::save_quality_matrix(args.out, matrix);
  }
  double sum = 0.0;
  for (double v : matrix.values) sum += v;
  std::printf("mean ssim %.4f over %dx%d views\n",
              sum / static_cast<double>(matrix.values.size()), matrix.n_rows,
              matrix.n_cols);
  return 0;
}

struct OptimizeRefsArgs {
  std::string matrix_csv;
  std::string out;
};

int cmd_optimize_refs(const OptimizeRefsArgs& args) {
  const lfgc::QualityMatrix m = lfgc::load_quality_matrix(args.matrix_csv);
  const auto [k_h, k_v] = lfgc::spacings_from_matrix(m);
  std::cout << "k_h=" << k_h << " k_v=" << k_v << "\n";
  if (!args.out.empty()) {
    std::FILE* f = std::fopen(args.out.c_str(), "w");
    if (f == nullptr) {
      throw lfgc::DataError("cannot open " + args.out + " for writing");
    }
    std::fprintf(f, "{\"k_h\": %d, \"k_v\": %d}\n", k_h, k_v);
    std::fclose(f);
  }
  return 0;
}

struct EncodeArgs {
  std::string lfdir;
  std::string out;
  lfgc::EncodeParams params;
  std::string scheme = "topleft";
};

int cmd_encode(const EncodeArgs& args_in) {
  EncodeArgs args = args_in;
  args.params.scheme = lfgc::scheme_from_string(args.scheme);
  const lfgc::LightFieldGrid lf = load_valid_lf(args.lfdir);
  const auto disparity = load_all_disparity(args.lfdir, lf);
  const Clock::time_point start = Clock::now();
  const std::vector<uint8_t> stream =
      lfgc::encode_lightfield(lf, disparity, args.params);
  const double enc_s = seconds_since(start);
  lfgc::write_binary_file(args.out, stream);
  const lfgc::BitrateReport report = lfgc::bitrate_report(stream);
  std::printf("%zu bytes, %.4f bpp (sideinfo %.4f, coefficients %.4f), %.2f s\n",
              report.total_bytes, report.bpp, report.sideinfo_bpp,
              report.coefficient_bpp, enc_s);
  return 0;
}

struct DecodeArgs {
  std::string stream;
  std::string outdir;
  lfgc::DecodeOptions options;
};

int cmd_decode(const DecodeArgs& args) {
  const std::vector<uint8_t> stream = lfgc::read_binary_file(args.stream);
  const Clock::time_point start = Clock::now();
  const lfgc::LightFieldGrid recon = lfgc::decode_lightfield(stream, args.options);
  const double dec_s = seconds_since(start);
  const fs::path dir(args.outdir);
  fs::create_directories(dir);
  lfgc::save_light_field(dir, recon);
  std::printf("decoded %dx%d views (%dx%d) in %.2f s\n", recon.n_rows,
              recon.n_cols, recon.height, recon.width, dec_s);
  return 0;
}

struct EvalArgs {
  std::string origdir;
  std::string recondir;
  std::string stream;
};

int cmd_eval(const EvalArgs& args) {
  const lfgc::LightFieldGrid orig = load_valid_lf(args.origdir);
  const lfgc::LightFieldGrid recon = load_valid_lf(args.recondir);
  const double psnr = lfgc::psnr_y(orig, recon);
  double ssim_sum = 0.0;
  for (size_t i = 0; i < orig.views.size(); ++i) {
    ssim_sum += lfgc::ssim(orig.views[i], recon.views[i]);
  }
  std::printf("psnr_y %.4f dB, mean ssim %.6f\n", psnr,
              ssim_sum / static_cast<double>(orig.views.size()));
  if (!args.stream.empty()) {
    const lfgc::BitrateReport report =
        lfgc::bitrate_report(lfgc::read_binary_file(args.stream));
    std::printf("%.4f bpp total: header+plan %zu B, sideinfo %zu B, "
                "coefficients %zu B over %zu blocks\n",
                report.bpp, report.header_bytes + report.plan_bytes,
                report.sideinfo_total, report.coefficient_total,
                report.block_bytes.size());
  }
  return 0;
}

struct RdSweepArgs {
  std::string lfdir;
  std::string out;
  lfgc::EncodeParams params;
  std::string scheme = "topleft";
  std::vector<int> qp_rest_list{10, 20, 30, 40};
};

int cmd_rd_sweep(const RdSweepArgs& args_in) {
  RdSweepArgs args = args_in;
  args.params.scheme = lfgc::scheme_from_string(args.scheme);
  const lfgc::LightFieldGrid lf = load_valid_lf(args.lfdir);
  const auto disparity = load_all_disparity(args.lfdir, lf);
  std::vector<lfgc::RdPoint> points;
  for (int qp_rest : args.qp_rest_list) {
    lfgc::EncodeParams params = args.params;
    params.quant.qp_rest = qp_rest;
    Clock::time_point start = Clock::now();
    const std::vector<uint8_t> stream =
        lfgc::encode_lightfield(lf, disparity, params);
    const double enc_s = seconds_since(start);
    start = Clock::now();
    lfgc::DecodeOptions dec;
    dec.workers = params.workers;
    const lfgc::LightFieldGrid recon = lfgc::decode_lightfield(stream, dec);
    const double dec_s = seconds_since(start);
    lfgc::RdPoint point;
    point.scheme = args.scheme;
    point.qp_first = params.quant.qp_first;
    point.qp_rest = qp_rest;
    point.bpp = lfgc::bitrate_report(stream).bpp;
    point.psnr_y = lfgc::psnr_y(lf, recon);
    point.enc_s = enc_s;
    point.dec_s = dec_s;
    points.push_back(point);
    std::printf("qp_rest %d: %.4f bpp, %.2f dB, enc %.2f s, dec %.2f s\n",
                qp_rest, point.bpp, point.psnr_y, enc_s, dec_s);
  }
  lfgc::emit_rd_csv(args.out, points);
  std::cout << "wrote " << args.out << "\n";
  return 0;
}

void add_slic_flags(CLI::App* cmd, lfgc::SlicParams& slic) {
  cmd->add_option("--segments", slic.n_segments, "Target superpixel count");
  cmd->add_option("--compactness", slic.compactness,
                  "SLIC compactness weight");
  cmd->add_option("--slic-iters", slic.max_iterations,
                  "SLIC iteration count");
}

void add_encode_flags(CLI::App* cmd, EncodeArgs& args) {
  cmd->add_option("--scheme", args.scheme, "topleft, center or multiview")
      ->check(CLI::IsMember({"topleft", "center", "multiview"}));
  cmd->add_option("--kh", args.params.k_h, "Horizontal reference spacing");
  cmd->add_option("--kv", args.params.k_v, "Vertical reference spacing");
  cmd->add_flag("--auto-refs", args.params.auto_refs,
                "Pick reference spacings from a projection-quality probe");
  cmd->add_option("--qp-first", args.params.quant.qp_first,
                  "QP of coefficient group 0")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--qp-rest", args.params.quant.qp_rest,
                  "QP of coefficient groups 1..31")
      ->check(CLI::NonNegativeNumber);
  cmd->add_flag("--no-quant", args.params.quant.no_quant,
                "Lossless-path mode (tiny fixed step)");
  cmd->add_option("--max-nodes", args.params.max_nodes,
                  "Super-ray graph size cap before coarsening")
      ->check(CLI::Range(2, 1 << 20));
  cmd->add_option("--psnr-min", args.params.psnr_min,
                  "Coarsening acceptance threshold in dB");
  cmd->add_option("--workers", args.params.workers, "Worker thread count")
      ->check(CLI::PositiveNumber);
  add_slic_flags(cmd, args.params.slic);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph-based light field codec and projection laboratory"};
  app.require_subcommand(1);
  app.set_config("--config");

  SynthArgs synth_args;
  CLI::App* synth = app.add_subcommand("synth", "Render a synthetic light field");
  synth->add_option("scene", synth_args.scene, "Scene spec JSON")->required();
  synth->add_option("outdir", synth_args.outdir, "Output directory")->required();
  synth->add_option("--vignette", synth_args.vignette,
                    "Peripheral intensity falloff strength")
      ->check(CLI::Range(0.0, 1.0));
  synth->add_option("--gamma", synth_args.gamma, "Gamma correction");
  synth->add_option("--perturb-view", synth_args.perturb_view,
                    "View whose disparity map gets noise, as row,col")
      ->expected(2)
      ->delimiter(',');
  synth->add_option("--perturb-sigma", synth_args.perturb_sigma,
                    "Disparity noise standard deviation");
  synth->add_option("--seed", synth_args.seed, "Noise seed");

  SegmentArgs segment_args;
  CLI::App* segment = app.add_subcommand("segment", "SLIC-segment one view");
  segment->add_option("lfdir", segment_args.lfdir, "Light field directory")
      ->required();
  segment->add_option("--view", segment_args.view, "View as row,col")
      ->expected(2)
      ->delimiter(',');
  add_slic_flags(segment, segment_args.slic);
  segment->add_option("-o,--out", segment_args.out_labels,
                      "Directory for the label map");
  segment->add_option("--table", segment_args.out_table,
                      "JSON path for the median-disparity table");

  QualityMatrixArgs qm_args;
  CLI::App* qm = app.add_subcommand(
      "quality-matrix", "Per-view SSIM of plan-projected segmentation");
  qm->add_option("lfdir", qm_args.lfdir, "Light field directory")->required();
  qm->add_option("--scheme", qm_args.scheme, "topleft, center or multiview")
      ->check(CLI::IsMember({"topleft", "center", "multiview"}));
  qm->add_option("--kh", qm_args.k_h, "Horizontal reference spacing");
  qm->add_option("--kv", qm_args.k_v, "Vertical reference spacing");
  qm->add_option("--labels", qm_args.labels,
                 "gt: dataset label maps, slic: per-view segmentation")
      ->check(CLI::IsMember({"gt", "slic"}));
  add_slic_flags(qm, qm_args.slic);
  qm->add_option("--workers", qm_args.workers, "Worker thread count")
      ->check(CLI::PositiveNumber);
  qm->add_option("-o,--out", qm_args.out, "CSV output path");

  OptimizeRefsArgs refs_args;
  CLI::App* refs = app.add_subcommand(
      "optimize-refs", "Reference spacings from a quality matrix CSV");
  refs->add_option("matrix", refs_args.matrix_csv, "Quality matrix CSV")
      ->required();
  refs->add_option("-o,--out", refs_args.out, "JSON output path");

  EncodeArgs encode_args;
  CLI::App* encode = app.add_subcommand("encode", "Encode a light field");
  encode->add_option("lfdir", encode_args.lfdir, "Light field directory")
      ->required();
  encode->add_option("out", encode_args.out, "Output .lfgc path")->required();
  add_encode_flags(encode, encode_args);

  DecodeArgs decode_args;
  CLI::App* decode = app.add_subcommand("decode", "Decode an .lfgc stream");
  decode->add_option("stream", decode_args.stream, "Input .lfgc path")
      ->required();
  decode->add_option("outdir", decode_args.outdir, "Output directory")
      ->required();
  decode->add_option("--workers", decode_args.options.workers,
                     "Worker thread count")
      ->check(CLI::PositiveNumber);
  decode->add_option("--max-groups", decode_args.options.max_groups,
                     "Keep only the first N coefficient groups")
      ->check(CLI::Range(1, lfgc::kNumGroups));

  EvalArgs eval_args;
  CLI::App* eval = app.add_subcommand("eval", "PSNR-Y and SSIM of two light fields");
  eval->add_option("orig", eval_args.origdir, "Original directory")->required();
  eval->add_option("recon", eval_args.recondir, "Reconstruction directory")
      ->required();
  eval->add_option("--stream", eval_args.stream,
                   "Report the bitrate of this .lfgc file");

  RdSweepArgs rd_args;
  EncodeArgs rd_encode_view;  // shares flag wiring with encode
  CLI::App* rd = app.add_subcommand("rd-sweep",
                                    "Rate-distortion sweep over qp_rest");
  rd->add_option("lfdir", rd_args.lfdir, "Light field directory")->required();
  rd->add_option("-o,--out", rd_args.out, "RD CSV output path")->required();
  rd->add_option("--qp-rest-list", rd_args.qp_rest_list,
               "qp_rest values to sweep")
      ->delimiter(',');
  add_encode_flags(rd, rd_encode_view);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*synth) return cmd_synth(synth_args);
    if (*segment) return cmd_segment(segment_args);
    if (*qm) return cmd_quality_matrix(qm_args);
    if (*refs) return cmd_optimize_refs(refs_args);
    if (*encode) return cmd_encode(encode_args);
    if (*decode) return cmd_decode(decode_args);
    if (*eval) return cmd_eval(eval_args);
    if (*rd) {
      rd_args.params = rd_encode_view.params;
      rd_args.scheme = rd_encode_view.scheme;
      return cmd_rd_sweep(rd_args);
    }
    throw lfgc::InternalError("no subcommand dispatched");
  } catch (const lfgc::DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const lfgc::InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
