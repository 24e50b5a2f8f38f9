// Copyright 2026 The lfgc Authors
// SPDX-License-Identifier: Apache-2.0

#include "lfgc/projection.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "lfgc/errors.hpp"
#include "lfgc/metrics.hpp"

namespace lfgc {

using nlohmann::json;

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::kTopLeft: return "topleft";
    case Scheme::kCenter: return "center";
    case Scheme::kMultiView: return "multiview";
  }
  return "?";
}

Scheme scheme_from_string(const std::string& name) {
  if (name == "topleft") return Scheme::kTopLeft;
  if (name == "center") return Scheme::kCenter;
  if (name == "multiview") return Scheme::kMultiView;
  throw DataError("unknown scheme '" + name + "'");
}

namespace {

// Top-left chaining restricted to one block: the reference row left to
// right, then a vertical step into each following row and that row.
void append_block_edges(std::vector<PlanEdge>& edges,
                        const ProjectionPlan::Block& b) {
  for (int c = b.col0; c < b.col1; ++c) {
    edges.push_back({{b.row0, c}, {b.row0, c + 1}});
  }
  for (int r = b.row0 + 1; r <= b.row1; ++r) {
    edges.push_back({{r - 1, b.col0}, {r, b.col0}});
    for (int c = b.col0; c < b.col1; ++c) {
      edges.push_back({{r, c}, {r, c + 1}});
    }
  }
}

void require_grid(int n_rows, int n_cols) {
  if (n_rows < 1 || n_cols < 1) {
    throw DataError("plan: grid must be at least 1x1");
  }
}

}  // namespace

ProjectionPlan plan_topleft(int n_rows, int n_cols) {
  require_grid(n_rows, n_cols);
  ProjectionPlan plan;
  plan.scheme = Scheme::kTopLeft;
  plan.n_rows = n_rows;
  plan.n_cols = n_cols;
  plan.references = {{1, 1}};
  plan.blocks = {{{1, 1}, 1, n_rows, 1, n_cols}};
  append_block_edges(plan.edges, plan.blocks[0]);
  return plan;
}

ProjectionPlan plan_center(int n_rows, int n_cols) {
  require_grid(n_rows, n_cols);
  if (n_rows % 2 == 0 || n_cols % 2 == 0) {
    throw DataError("plan_center: grid dimensions must be odd");
  }
  ProjectionPlan plan;
  plan.scheme = Scheme::kCenter;
  plan.n_rows = n_rows;
  plan.n_cols = n_cols;
  const int cr = (n_rows + 1) / 2;
  const int cc = (n_cols + 1) / 2;
  plan.references = {{cr, cc}};
  plan.blocks = {{{cr, cc}, 1, n_rows, 1, n_cols}};

  // Center column outward, up before down at each distance.
  for (int d = 1; d <= n_rows / 2; ++d) {
    plan.edges.push_back({{cr - d + 1, cc}, {cr - d, cc}});
    plan.edges.push_back({{cr + d - 1, cc}, {cr + d, cc}});
  }
  // Every row outward from its center-column view, the center row first.
  std::vector<int> rows;
  rows.push_back(cr);
  for (int r = 1; r <= n_rows; ++r) {
    if (r != cr) rows.push_back(r);
  }
  for (int r : rows) {
    for (int d = 1; d <= n_cols / 2; ++d) {
      plan.edges.push_back({{r, cc - d + 1}, {r, cc - d}});
      plan.edges.push_back({{r, cc + d - 1}, {r, cc + d}});
    }
  }
  return plan;
}

ProjectionPlan plan_multiview(int n_rows, int n_cols, int k_h, int k_v) {
  require_grid(n_rows, n_cols);
  if (k_h < 1 || k_v < 1) {
    throw DataError("plan_multiview: spacings must be >= 1");
  }
  // Every k-th position, except a candidate with no views after it.
  auto anchors = [](int extent, int step) {
    std::vector<int> out;
    for (int p = 1; p <= extent; p += step) {
      if (p == extent && p > 1) break;
      out.push_back(p);
    }
    return out;
  };
  const std::vector<int> ref_rows = anchors(n_rows, k_v);
  const std::vector<int> ref_cols = anchors(n_cols, k_h);

  ProjectionPlan plan;
  plan.scheme = Scheme::kMultiView;
  plan.n_rows = n_rows;
  plan.n_cols = n_cols;
  plan.k_h = k_h;
  plan.k_v = k_v;
  for (size_t i = 0; i < ref_rows.size(); ++i) {
    const int row0 = ref_rows[i];
    const int row1 = i + 1 < ref_rows.size() ? ref_rows[i + 1] - 1 : n_rows;
    for (size_t j = 0; j < ref_cols.size(); ++j) {
      const int col0 = ref_cols[j];
      const int col1 = j + 1 < ref_cols.size() ? ref_cols[j + 1] - 1 : n_cols;
      plan.references.push_back({row0, col0});
      plan.blocks.push_back({{row0, col0}, row0, row1, col0, col1});
    }
  }
  for (const ProjectionPlan::Block& b : plan.blocks) {
    append_block_edges(plan.edges, b);
  }
  return plan;
}

void validate_plan(const ProjectionPlan& plan) {
  require_grid(plan.n_rows, plan.n_cols);
  const size_t n_views = static_cast<size_t>(plan.n_rows) * plan.n_cols;
  auto index_of = [&](ViewIndex v) -> size_t {
    if (v.row < 1 || v.row > plan.n_rows || v.col < 1 || v.col > plan.n_cols) {
      throw DataError("plan: view " + to_string(v) + " outside the grid");
    }
    return static_cast<size_t>(v.row - 1) * plan.n_cols + (v.col - 1);
  };

  if (plan.references.empty()) throw DataError("plan: no references");
  if (plan.blocks.size() != plan.references.size()) {
    throw DataError("plan: block count does not match reference count");
  }
  std::vector<int> block_of(n_views, -1);
  for (size_t b = 0; b < plan.blocks.size(); ++b) {
    const ProjectionPlan::Block& blk = plan.blocks[b];
    if (blk.reference != plan.references[b]) {
      throw DataError("plan: block reference order mismatch");
    }
    index_of({blk.row0, blk.col0});
    index_of({blk.row1, blk.col1});
    if (blk.row0 > blk.row1 || blk.col0 > blk.col1) {
      throw DataError("plan: empty block");
    }
    if (blk.reference.row < blk.row0 || blk.reference.row > blk.row1 ||
        blk.reference.col < blk.col0 || blk.reference.col > blk.col1) {
      throw DataError("plan: block reference outside its block");
    }
    if (plan.scheme == Scheme::kMultiView &&
        (blk.reference.row != blk.row0 || blk.reference.col != blk.col0)) {
      throw DataError("plan: block reference must be its top-left view");
    }
    for (int r = blk.row0; r <= blk.row1; ++r) {
      for (int c = blk.col0; c <= blk.col1; ++c) {
        if (block_of[index_of({r, c})] != -1) {
          throw DataError("plan: blocks overlap at " + to_string({r, c}));
        }
        block_of[index_of({r, c})] = static_cast<int>(b);
      }
    }
  }
  for (size_t i = 0; i < n_views; ++i) {
    if (block_of[i] == -1) throw DataError("plan: blocks do not cover grid");
  }

  std::vector<char> reached(n_views, 0);
  for (const ViewIndex& ref : plan.references) {
    size_t i = index_of(ref);
    if (reached[i]) throw DataError("plan: duplicate reference " + to_string(ref));
    reached[i] = 1;
  }
  for (const PlanEdge& e : plan.edges) {
    const size_t si = index_of(e.src);
    const size_t di = index_of(e.dst);
    if (!reached[si]) {
      throw DataError("plan: edge from unreached view " + to_string(e.src));
    }
    if (reached[di]) {
      throw DataError("plan: view " + to_string(e.dst) + " targeted twice");
    }
    if (block_of[si] != block_of[di]) {
      throw DataError("plan: edge crosses block boundary " + to_string(e.src) +
                      " -> " + to_string(e.dst));
    }
    reached[di] = 1;
  }
  for (size_t i = 0; i < n_views; ++i) {
    if (!reached[i]) {
      throw DataError("plan: view (" +
                      std::to_string(static_cast<int>(i) / plan.n_cols + 1) +
                      "," +
                      std::to_string(static_cast<int>(i) % plan.n_cols + 1) +
                      ") never projected");
    }
  }
}

namespace {

// Cumulative (row, col) offsets from each view's chain root.
std::vector<std::pair<int, int>> chain_offsets(const ProjectionPlan& plan) {
  const size_t n = static_cast<size_t>(plan.n_rows) * plan.n_cols;
  std::vector<std::pair<int, int>> off(n, {0, 0});
  auto idx = [&](ViewIndex v) {
    return static_cast<size_t>(v.row - 1) * plan.n_cols + (v.col - 1);
  };
  for (const PlanEdge& e : plan.edges) {
    off[idx(e.dst)] = {off[idx(e.src)].first + (e.dst.row - e.src.row),
                       off[idx(e.src)].second + (e.dst.col - e.src.col)};
  }
  return off;
}

}  // namespace

int max_axis_distance(const ProjectionPlan& plan) {
  int best = 0;
  for (const auto& [dr, dc] : chain_offsets(plan)) {
    best = std::max({best, std::abs(dr), std::abs(dc)});
  }
  return best;
}

int max_hop_count(const ProjectionPlan& plan) {
  const size_t n = static_cast<size_t>(plan.n_rows) * plan.n_cols;
  std::vector<int> hops(n, 0);
  auto idx = [&](ViewIndex v) {
    return static_cast<size_t>(v.row - 1) * plan.n_cols + (v.col - 1);
  };
  int best = 0;
  for (const PlanEdge& e : plan.edges) {
    hops[idx(e.dst)] = hops[idx(e.src)] + 1;
    best = std::max(best, hops[idx(e.dst)]);
  }
  return best;
}

std::string plan_to_json(const ProjectionPlan& plan) {
  json refs = json::array();
  for (const ViewIndex& r : plan.references) refs.push_back({r.row, r.col});
  json edges = json::array();
  for (const PlanEdge& e : plan.edges) {
    edges.push_back({e.src.row, e.src.col, e.dst.row, e.dst.col});
  }
  json blocks = json::array();
  for (const ProjectionPlan::Block& b : plan.blocks) {
    blocks.push_back({b.reference.row, b.reference.col, b.row0, b.row1,
                      b.col0, b.col1});
  }
  const json j = {{"scheme", to_string(plan.scheme)},
                  {"n_rows", plan.n_rows},
                  {"n_cols", plan.n_cols},
                  {"k_h", plan.k_h},
                  {"k_v", plan.k_v},
                  {"references", refs},
                  {"edges", edges},
                  {"blocks", blocks}};
  return j.dump();
}

ProjectionPlan plan_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw DataError(std::string("plan json: ") + e.what());
  }
  ProjectionPlan plan;
  try {
    plan.scheme = scheme_from_string(j.at("scheme").get<std::string>());
    plan.n_rows = j.at("n_rows").get<int>();
    plan.n_cols = j.at("n_cols").get<int>();
    plan.k_h = j.value("k_h", 0);
    plan.k_v = j.value("k_v", 0);
    for (const json& r : j.at("references")) {
      plan.references.push_back({r.at(0).get<int>(), r.at(1).get<int>()});
    }
    for (const json& e : j.at("edges")) {
      plan.edges.push_back({{e.at(0).get<int>(), e.at(1).get<int>()},
                            {e.at(2).get<int>(), e.at(3).get<int>()}});
    }
    for (const json& b : j.at("blocks")) {
      plan.blocks.push_back({{b.at(0).get<int>(), b.at(1).get<int>()},
                             b.at(2).get<int>(),
                             b.at(3).get<int>(),
                             b.at(4).get<int>(),
                             b.at(5).get<int>()});
    }
  } catch (const json::exception& e) {
    throw DataError(std::string("plan json: ") + e.what());
  }
  validate_plan(plan);
  return plan;
}

namespace {

// Multi-source BFS over 4-neighborhoods, committed one ring at a time so a
// hole takes the lowest label among all nearest assigned pixels.
void fill_holes(LabelMap& map) {
  const int h = map.labels.height();
  const int w = map.labels.width();
  std::vector<std::pair<int, int>> frontier;
  frontier.reserve(map.labels.size());
  bool any_hole = false;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (map.labels.at(y, x) != LabelMap::kHole) {
        frontier.push_back({y, x});
      } else {
        any_hole = true;
      }
    }
  }
  if (!any_hole) return;
  if (frontier.empty()) {
    // Every source pixel left the frame; no neighbor information remains.
    std::fill(map.labels.pixels().begin(), map.labels.pixels().end(), 0);
    return;
  }
  std::vector<std::pair<int, int>> next;
  while (!frontier.empty()) {
    next.clear();
    for (const auto& [y, x] : frontier) {
      const int32_t lab = map.labels.at(y, x);
      const int ny[4] = {y - 1, y + 1, y, y};
      const int nx[4] = {x, x, x - 1, x + 1};
      for (int k = 0; k < 4; ++k) {
        if (ny[k] < 0 || ny[k] >= h || nx[k] < 0 || nx[k] >= w) continue;
        int32_t& cell = map.labels.at(ny[k], nx[k]);
        if (cell == LabelMap::kHole) {
          cell = -2 - lab;  // tentative, committed after the ring completes
          next.push_back({ny[k], nx[k]});
        } else if (cell <= -2) {
          cell = std::max(cell, -2 - lab);  // lower label wins the tie
        }
      }
    }
    for (const auto& [y, x] : next) {
      int32_t& cell = map.labels.at(y, x);
      cell = -2 - cell;
    }
    std::swap(frontier, next);
  }
}

}  // namespace

LabelMap project_labels(const LabelMap& src, const SuperRayTable& table,
                        ViewIndex src_view, ViewIndex dst_view,
                        const ProjectionOptions& options) {
  if (src_view == dst_view) return src;
  if (table.label_count() < src.n_labels) {
    throw DataError("project_labels: " + std::to_string(src.n_labels) +
                    " labels but only " +
                    std::to_string(table.label_count()) + " table entries");
  }
  const int h = src.labels.height();
  const int w = src.labels.width();
  const int d_row = dst_view.row - src_view.row;
  const int d_col = dst_view.col - src_view.col;

  // Per-label integer shift of the landing position.
  std::vector<int> shift_y(src.n_labels), shift_x(src.n_labels);
  std::vector<float> magnitude(src.n_labels);
  for (int l = 0; l < src.n_labels; ++l) {
    const float d = table.entries[static_cast<size_t>(l)].median_disparity;
    shift_y[l] = static_cast<int>(std::lround(d_row * static_cast<double>(d)));
    shift_x[l] = static_cast<int>(std::lround(d_col * static_cast<double>(d)));
    magnitude[l] = std::abs(d);
  }

  LabelMap dst(h, w, src.n_labels);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int32_t lab = src.labels.at(y, x);
      if (lab < 0 || lab >= src.n_labels) {
        throw DataError("project_labels: label " + std::to_string(lab) +
                        " has no table entry");
      }
      const int ty = y - shift_y[lab];
      const int tx = x - shift_x[lab];
      if (ty < 0 || ty >= h || tx < 0 || tx >= w) continue;
      int32_t& cell = dst.labels.at(ty, tx);
      if (cell == LabelMap::kHole) {
        cell = lab;
        continue;
      }
      const float mc = magnitude[lab];
      const float mw = magnitude[cell];
      const bool wins = options.prefer_larger_disparity
                            ? (mc > mw || (mc == mw && lab < cell))
                            : (mc < mw || (mc == mw && lab < cell));
      if (wins) cell = lab;
    }
  }
  fill_holes(dst);
  return dst;
}

std::vector<LabelMap> run_plan(
    const ProjectionPlan& plan,
    const std::map<ViewIndex, LabelMap>& ref_labels,
    const std::map<ViewIndex, SuperRayTable>& ref_tables,
    const ProjectionOptions& options) {
  validate_plan(plan);
  const size_t n = static_cast<size_t>(plan.n_rows) * plan.n_cols;
  auto idx = [&](ViewIndex v) {
    return static_cast<size_t>(v.row - 1) * plan.n_cols + (v.col - 1);
  };
  std::vector<LabelMap> out(n);
  std::vector<const SuperRayTable*> chain_table(n, nullptr);
  for (const ViewIndex& ref : plan.references) {
    const auto lit = ref_labels.find(ref);
    const auto tit = ref_tables.find(ref);
    if (lit == ref_labels.end() || tit == ref_tables.end()) {
      throw DataError("run_plan: missing labels or table for reference " +
                      to_string(ref));
    }
    out[idx(ref)] = lit->second;
    chain_table[idx(ref)] = &tit->second;
  }
  for (const PlanEdge& e : plan.edges) {
    const SuperRayTable* table = chain_table[idx(e.src)];
    chain_table[idx(e.dst)] = table;
    out[idx(e.dst)] =
        project_labels(out[idx(e.src)], *table, e.src, e.dst, options);
  }
  return out;
}

double projection_quality(const LabelMap& gt, const LabelMap& projected) {
  if (gt.labels.height() != projected.labels.height() ||
      gt.labels.width() != projected.labels.width()) {
    throw DataError("projection_quality: map dimensions differ");
  }
  Image<double> a(gt.labels.height(), gt.labels.width());
  Image<double> b(a.height(), a.width());
  for (size_t i = 0; i < a.size(); ++i) {
    a.data()[i] = gt.labels.data()[i];
    b.data()[i] = projected.labels.data()[i];
  }
  const double L = std::max(gt.n_labels - 1, 1);
  return ssim(a, b, L);
}

QualityMatrix quality_matrix(
    const ProjectionPlan& plan, const std::vector<LabelMap>& gt_labels,
    const std::map<ViewIndex, SuperRayTable>& ref_tables,
    const ProjectionOptions& options) {
  const size_t n = static_cast<size_t>(plan.n_rows) * plan.n_cols;
  if (gt_labels.size() != n) {
    throw DataError("quality_matrix: ground truth count does not match grid");
  }
  auto idx = [&](ViewIndex v) {
    return static_cast<size_t>(v.row - 1) * plan.n_cols + (v.col - 1);
  };
  std::map<ViewIndex, LabelMap> ref_labels;
  for (const ViewIndex& ref : plan.references) {
    ref_labels[ref] = gt_labels[idx(ref)];
  }
  const std::vector<LabelMap> projected =
      run_plan(plan, ref_labels, ref_tables, options);
  QualityMatrix m;
  m.n_rows = plan.n_rows;
  m.n_cols = plan.n_cols;
  m.values.resize(n);
  for (size_t i = 0; i < n; ++i) {
    m.values[i] = projection_quality(gt_labels[i], projected[i]);
  }
  return m;
}

void save_quality_matrix(const std::filesystem::path& path,
                         const QualityMatrix& m) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  char buf[32];
  for (int r = 1; r <= m.n_rows; ++r) {
    for (int c = 1; c <= m.n_cols; ++c) {
      std::snprintf(buf, sizeof(buf), "%.3f", m.at(r, c));
      out << buf << (c == m.n_cols ? "\n" : ",");
    }
  }
  if (!out) throw DataError("write failed: " + path.string());
}

QualityMatrix load_quality_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  QualityMatrix m;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string field;
    int cols = 0;
    while (std::getline(ss, field, ',')) {
      try {
        m.values.push_back(std::stod(field));
      } catch (const std::exception&) {
        throw DataError(path.string() + ": bad value '" + field + "'");
      }
      ++cols;
    }
    if (m.n_cols == 0) {
      m.n_cols = cols;
    } else if (cols != m.n_cols) {
      throw DataError(path.string() + ": ragged rows");
    }
    ++m.n_rows;
  }
  if (m.n_rows == 0) throw DataError(path.string() + ": empty matrix");
  return m;
}

int select_reference_spacing(const RefSelectionInput& input) {
  const size_t n = input.k.size();
  if (n != input.ssim.size()) {
    throw DataError("select_reference_spacing: k and ssim lengths differ");
  }
  if (n < 2) {
    throw DataError("select_reference_spacing: need at least 2 points");
  }
  for (size_t i = 1; i < n; ++i) {
    if (input.k[i] <= input.k[i - 1]) {
      throw DataError("select_reference_spacing: k must be strictly increasing");
    }
  }
  // The terminal view cannot serve as a reference (nothing follows it), so
  // it never enters the candidate pool.
  const size_t m = n - 1;
  auto cross = [&](size_t o, size_t a, size_t b) {
    const double ox = input.k[o], oy = input.ssim[o];
    const double ax = input.k[a], ay = input.ssim[a];
    const double bx = input.k[b], by = input.ssim[b];
    return (ax - ox) * (by - oy) - (ay - oy) * (bx - ox);
  };
  // Lower convex hull over increasing k; collinear points stay on the hull.
  std::vector<size_t> hull;
  for (size_t i = 0; i < m; ++i) {
    while (hull.size() >= 2 &&
           cross(hull[hull.size() - 2], hull[hull.size() - 1], i) < 0.0) {
      hull.pop_back();
    }
    hull.push_back(i);
  }
  return input.k[hull[hull.size() / 2]];
}

std::pair<int, int> spacings_from_matrix(const QualityMatrix& m) {
  RefSelectionInput row, col;
  for (int k = 1; k < m.n_cols; ++k) {
    row.k.push_back(k);
    row.ssim.push_back(m.at(1, 1 + k));
  }
  for (int k = 1; k < m.n_rows; ++k) {
    col.k.push_back(k);
    col.ssim.push_back(m.at(1 + k, 1));
  }
  return {select_reference_spacing(row), select_reference_spacing(col)};
}

}  // namespace lfgc
