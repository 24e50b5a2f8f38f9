// Copyright 2026 The lfgc Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "lfgc/errors.hpp"
#include "lfgc/projection.hpp"
#include "lfgc/slic.hpp"
#include "lfgc/synth.hpp"
#include "test_util.hpp"

using namespace lfgc;

namespace {

/// Non-occluding two-layer scene: the rectangles' footprints stay disjoint
/// in every view of a 3x3 grid, so exact projection must reproduce the
/// ground truth everywhere.
SceneSpec disjoint_scene() {
  SceneSpec spec;
  spec.grid_rows = 3;
  spec.grid_cols = 3;
  spec.view_height = 20;
  spec.view_width = 20;
  spec.background_intensity = 50;

  // Layers are kept no wider than their smallest nonzero per-jump shift, so
  // a projected layer either overlaps its old footprint by a width-1 strip
  // (whose refill tie goes to the background, matching the render) or clears
  // it entirely (refilled purely from background neighbors).
  Layer a;
  a.shape = ShapeKind::kRect;
  a.y = 6;
  a.x = 6;
  a.h = 2;
  a.w = 2;
  a.disparity = 1.0;
  a.intensity = 150;
  spec.layers.push_back(a);

  Layer b = a;
  b.y = 14;
  b.x = 14;
  b.disparity = 2.0;
  b.intensity = 220;
  spec.layers.push_back(b);

  Layer c;
  c.shape = ShapeKind::kRect;
  c.y = 2;
  c.x = 14;
  c.h = 5;
  c.w = 5;
  c.disparity = 0.0;
  c.intensity = 90;
  spec.layers.push_back(c);
  return spec;
}

std::map<ViewIndex, SuperRayTable> tables_at_references(
    const ProjectionPlan& plan, const RenderedLightField& r) {
  std::map<ViewIndex, SuperRayTable> tables;
  for (const ViewIndex& ref : plan.references) {
    const size_t i =
        static_cast<size_t>(ref.row - 1) * r.lf.n_cols + (ref.col - 1);
    tables[ref] = median_disparity_per_label(r.labels[i], r.disparity[i]);
  }
  return tables;
}

std::map<ViewIndex, LabelMap> labels_at_references(
    const ProjectionPlan& plan, const RenderedLightField& r) {
  std::map<ViewIndex, LabelMap> labels;
  for (const ViewIndex& ref : plan.references) {
    const size_t i =
        static_cast<size_t>(ref.row - 1) * r.lf.n_cols + (ref.col - 1);
    labels[ref] = r.labels[i];
  }
  return labels;
}

SuperRayTable table_of(std::vector<float> medians) {
  SuperRayTable t;
  for (float m : medians) t.entries.push_back({1, m, m});
  return t;
}

LabelMap row_map(std::vector<int32_t> cells, int n_labels) {
  LabelMap m(1, static_cast<int>(cells.size()), n_labels);
  for (size_t x = 0; x < cells.size(); ++x) {
    m.labels.at(0, static_cast<int>(x)) = cells[x];
  }
  return m;
}

std::vector<int32_t> row_of(const LabelMap& m) {
  return m.labels.pixels();
}

}  // namespace

TEST_SUITE_BEGIN("projection");

TEST_CASE("top-left plan walks the first column then every row") {
  SUBCASE("2x2 is the smallest chain") {
    const ProjectionPlan p = plan_topleft(2, 2);
    CHECK(p.references == std::vector<ViewIndex>{{1, 1}});
    REQUIRE(p.edges.size() == 3);
    CHECK(p.edges[0] == PlanEdge{{1, 1}, {1, 2}});
    CHECK(p.edges[1] == PlanEdge{{1, 1}, {2, 1}});
    CHECK(p.edges[2] == PlanEdge{{2, 1}, {2, 2}});
  }
  SUBCASE("13x13 covers every non-reference view once") {
    const ProjectionPlan p = plan_topleft(13, 13);
    CHECK(p.references.size() == 1);
    CHECK(p.edges.size() == 168);
    CHECK(max_axis_distance(p) == 12);
  }
  SUBCASE("1x1 degenerates to a lone reference") {
    const ProjectionPlan p = plan_topleft(1, 1);
    CHECK(p.references == std::vector<ViewIndex>{{1, 1}});
    CHECK(p.edges.empty());
  }
}

TEST_CASE("center plan spreads outward from the middle view") {
  SUBCASE("9x9 is rooted at the center") {
    CHECK(plan_center(9, 9).references == std::vector<ViewIndex>{{5, 5}});
  }
  SUBCASE("3x3 edge order: center column first, then each row outward") {
    const ProjectionPlan p = plan_center(3, 3);
    const std::vector<PlanEdge> expected = {
        {{2, 2}, {1, 2}}, {{2, 2}, {3, 2}}, {{2, 2}, {2, 1}},
        {{2, 2}, {2, 3}}, {{1, 2}, {1, 1}}, {{1, 2}, {1, 3}},
        {{3, 2}, {3, 1}}, {{3, 2}, {3, 3}}};
    CHECK(p.edges == expected);
  }
  SUBCASE("13x13 halves the worst-case view distance") {
    const ProjectionPlan p = plan_center(13, 13);
    CHECK(max_axis_distance(p) == 6);
    CHECK(max_hop_count(p) == 12);
  }
  SUBCASE("even grids are rejected") {
    CHECK_THROWS_AS(plan_center(4, 5), DataError);
    CHECK_THROWS_AS(plan_center(5, 4), DataError);
  }
  SUBCASE("axis distance beats top-left for every odd size above 1") {
    for (int n : {3, 5, 7, 9, 11, 13, 15}) {
      CHECK(max_axis_distance(plan_center(n, n)) <
            max_axis_distance(plan_topleft(n, n)));
      CHECK(max_hop_count(plan_center(n, n)) == 2 * (n / 2));
    }
  }
}

TEST_CASE("multi-view plan drops terminal references and tiles blocks") {
  SUBCASE("9x9 with k=4 uses four references") {
    const ProjectionPlan p = plan_multiview(9, 9, 4, 4);
    CHECK(p.references ==
          std::vector<ViewIndex>{{1, 1}, {1, 5}, {5, 1}, {5, 5}});
    REQUIRE(p.blocks.size() == 4);
    CHECK(p.blocks[0] == ProjectionPlan::Block{{1, 1}, 1, 4, 1, 4});
    CHECK(p.blocks[1] == ProjectionPlan::Block{{1, 5}, 1, 4, 5, 9});
    CHECK(p.blocks[2] == ProjectionPlan::Block{{5, 1}, 5, 9, 1, 4});
    CHECK(p.blocks[3] == ProjectionPlan::Block{{5, 5}, 5, 9, 5, 9});
  }
  SUBCASE("9x9 with k_h=3, k_v=4 uses six references") {
    const ProjectionPlan p = plan_multiview(9, 9, 3, 4);
    CHECK(p.references.size() == 6);
    CHECK(p.blocks.size() == 6);
  }
  SUBCASE("k = n is the top-left plan in one block") {
    const ProjectionPlan p = plan_multiview(5, 5, 5, 5);
    const ProjectionPlan t = plan_topleft(5, 5);
    CHECK(p.references == t.references);
    CHECK(p.edges == t.edges);
    CHECK(p.blocks.size() == 1);
  }
  SUBCASE("edges never leave their block") {
    const ProjectionPlan p = plan_multiview(9, 9, 4, 4);
    for (const PlanEdge& e : p.edges) {
      bool found = false;
      for (const auto& b : p.blocks) {
        const bool src_in = e.src.row >= b.row0 && e.src.row <= b.row1 &&
                            e.src.col >= b.col0 && e.src.col <= b.col1;
        const bool dst_in = e.dst.row >= b.row0 && e.dst.row <= b.row1 &&
                            e.dst.col >= b.col0 && e.dst.col <= b.col1;
        CHECK(src_in == dst_in);
        found = found || (src_in && dst_in);
      }
      CHECK(found);
    }
  }
}

TEST_CASE("every constructor yields a valid forest covering the grid") {
  for (int rows = 1; rows <= 15; ++rows) {
    for (int cols : {1, 2, 5, 9, 15}) {
      CAPTURE(rows);
      CAPTURE(cols);
      CHECK_NOTHROW(validate_plan(plan_topleft(rows, cols)));
      if (rows % 2 == 1 && cols % 2 == 1) {
        CHECK_NOTHROW(validate_plan(plan_center(rows, cols)));
      }
      for (int k : {1, 2, 4, 7}) {
        CHECK_NOTHROW(validate_plan(plan_multiview(rows, cols, k, k)));
      }
    }
  }
}

TEST_CASE("validate_plan flags structural damage") {
  ProjectionPlan p = plan_topleft(2, 2);

  SUBCASE("a twice-targeted view") {
    p.edges.push_back({{1, 2}, {2, 2}});
    CHECK_THROWS_WITH_AS(validate_plan(p),
                         doctest::Contains("targeted twice"), DataError);
  }
  SUBCASE("an edge from an unreached view") {
    p.edges[2] = {{2, 2}, {2, 1}};
    p.edges.push_back({{2, 1}, {2, 2}});
    CHECK_THROWS_AS(validate_plan(p), DataError);
  }
  SUBCASE("an uncovered view") {
    p.edges.pop_back();
    CHECK_THROWS_WITH_AS(validate_plan(p),
                         doctest::Contains("never projected"), DataError);
  }
  SUBCASE("a reference outside its block") {
    p.blocks[0].reference = {2, 2};
    p.references[0] = {2, 2};
    CHECK_THROWS_AS(validate_plan(p), DataError);
  }
}

TEST_CASE("plans survive the json roundtrip") {
  for (const ProjectionPlan& p :
       {plan_topleft(4, 6), plan_center(5, 5), plan_multiview(9, 9, 3, 4)}) {
    const ProjectionPlan q = plan_from_json(plan_to_json(p));
    CHECK(q.scheme == p.scheme);
    CHECK(q.n_rows == p.n_rows);
    CHECK(q.n_cols == p.n_cols);
    CHECK(q.k_h == p.k_h);
    CHECK(q.k_v == p.k_v);
    CHECK(q.references == p.references);
    CHECK(q.edges == p.edges);
    CHECK(q.blocks == p.blocks);
  }
  CHECK_THROWS_AS(plan_from_json("{"), DataError);
  CHECK_THROWS_AS(plan_from_json("{\"scheme\":\"nope\"}"), DataError);
}

TEST_CASE("project_labels identity cases") {
  const LabelMap src = row_map({0, 1, 1, 0, 2}, 3);
  const SuperRayTable t = table_of({0.5f, 1.0f, -2.0f});

  SUBCASE("same view is returned unchanged") {
    CHECK(project_labels(src, t, {2, 3}, {2, 3}) == src);
  }
  SUBCASE("zero disparity is the identity for any target") {
    const SuperRayTable zeros = table_of({0.0f, 0.0f, 0.0f});
    CHECK(project_labels(src, zeros, {1, 1}, {3, 4}) == src);
    CHECK(project_labels(src, zeros, {2, 2}, {1, 1}) == src);
  }
  SUBCASE("a label missing from the table is an error") {
    CHECK_THROWS_AS(project_labels(src, table_of({0.0f, 1.0f}), {1, 1}, {1, 2}),
                    DataError);
  }
}

TEST_CASE("projection shifts by the rounded per-axis disparity") {
  // One step right: target x = x - d. Label 1 (d=2) moves two columns left,
  // label 0 (d=0) holds still.
  const LabelMap src = row_map({0, 0, 1, 1, 0, 0}, 2);
  const SuperRayTable t = table_of({0.0f, 2.0f});
  const LabelMap out = project_labels(src, t, {1, 1}, {1, 2});
  // The vacated strip at x = 2, 3 refills from the nearest survivor on each
  // side: label 1 at x = 1 claims x = 2, the background claims x = 3.
  CHECK(row_of(out) == std::vector<int32_t>{1, 1, 1, 0, 0, 0});

  // One step down moves rows for the same table.
  LabelMap col_src(6, 1, 2, 0);
  col_src.labels.at(2, 0) = 1;
  col_src.labels.at(3, 0) = 1;
  const LabelMap down = project_labels(col_src, t, {1, 1}, {2, 1});
  CHECK(down.labels.at(0, 0) == 1);
  CHECK(down.labels.at(1, 0) == 1);
  CHECK(down.labels.at(2, 0) == 1);
  for (int y = 3; y < 6; ++y) CHECK(down.labels.at(y, 0) == 0);
}

TEST_CASE("collisions favour the larger disparity magnitude by default") {
  // After one right step, label 1 (d=2) lands on label 0 (d=0) territory.
  const LabelMap src = row_map({0, 0, 1, 1, 2, 2}, 3);
  const SuperRayTable t = table_of({0.0f, 2.0f, 0.0f});

  const LabelMap taken = project_labels(src, t, {1, 1}, {1, 2});
  CHECK(row_of(taken)[0] == 1);
  CHECK(row_of(taken)[1] == 1);

  ProjectionOptions flipped;
  flipped.prefer_larger_disparity = false;
  const LabelMap kept = project_labels(src, t, {1, 1}, {1, 2}, flipped);
  CHECK(row_of(kept)[0] == 0);
  CHECK(row_of(kept)[1] == 0);
}

TEST_CASE("equal-magnitude collisions go to the lower label") {
  // Labels 1 (d=+1) and 2 (d=-1) both land on x=2 after one right step.
  const LabelMap src = row_map({0, 2, 0, 1, 0}, 3);
  const SuperRayTable t = table_of({0.0f, 1.0f, -1.0f});
  const LabelMap out = project_labels(src, t, {1, 1}, {1, 2});
  CHECK(row_of(out)[2] == 1);
}

TEST_CASE("holes are filled breadth-first, lower label on ties") {
  SUBCASE("content clipped at the border refills from the survivor") {
    const LabelMap src = row_map({1, 1, 0, 0, 0, 0}, 2);
    const SuperRayTable t = table_of({0.0f, 6.0f});
    // Label 1 leaves the frame entirely; its pixels become holes and take
    // the nearest remaining label.
    const LabelMap out = project_labels(src, t, {1, 1}, {1, 2});
    CHECK(row_of(out) == std::vector<int32_t>{0, 0, 0, 0, 0, 0});
  }
  SUBCASE("an equidistant hole takes the lower label") {
    const LabelMap src = row_map({0, 1, 2}, 3);
    const SuperRayTable t = table_of({0.0f, 2.0f, 0.0f});
    // Label 1 clips out; x=1 ends equidistant from labels 0 and 2.
    const LabelMap out = project_labels(src, t, {1, 1}, {1, 2});
    CHECK(row_of(out) == std::vector<int32_t>{0, 0, 2});
  }
  SUBCASE("separating labels leave a seam filled from both sides") {
    const LabelMap src = row_map({0, 0, 0, 1, 1, 1}, 2);
    const SuperRayTable t = table_of({1.0f, -1.0f});
    const LabelMap out = project_labels(src, t, {1, 1}, {1, 2});
    CHECK(row_of(out) == std::vector<int32_t>{0, 0, 0, 1, 1, 1});
  }
}

TEST_CASE("exact projection reproduces ground truth labels everywhere") {
  const RenderedLightField r = render_lf(disjoint_scene());
  const SuperRayTable t =
      median_disparity_per_label(r.labels[0], r.disparity[0]);
  for (int row = 1; row <= 3; ++row) {
    for (int col = 1; col <= 3; ++col) {
      CAPTURE(row);
      CAPTURE(col);
      const LabelMap out = project_labels(r.labels[0], t, {1, 1}, {row, col});
      CHECK(out == r.labels[(row - 1) * 3 + (col - 1)]);
    }
  }
}

TEST_CASE("run_plan chains projections through intermediate views") {
  const RenderedLightField r = render_lf(disjoint_scene());
  for (const ProjectionPlan& plan :
       {plan_topleft(3, 3), plan_center(3, 3), plan_multiview(3, 3, 2, 2)}) {
    CAPTURE(to_string(plan.scheme));
    const std::vector<LabelMap> views = run_plan(
        plan, labels_at_references(plan, r), tables_at_references(plan, r));
    REQUIRE(views.size() == 9);
    for (size_t i = 0; i < views.size(); ++i) {
      CHECK(views[i] == r.labels[i]);
    }
  }
}

TEST_CASE("a planless grid keeps only the reference") {
  const ProjectionPlan p = plan_topleft(1, 1);
  const LabelMap ref = row_map({0, 1, 0}, 2);
  const auto views =
      run_plan(p, {{{1, 1}, ref}}, {{{1, 1}, table_of({0.0f, 0.0f})}});
  REQUIRE(views.size() == 1);
  CHECK(views[0] == ref);
}

TEST_CASE("each block projects with its own reference table") {
  // 1x4 multi-view plan, blocks [1,2] and [3,4]. The same single-label map
  // shifts by d=0 in the first block and d=2 in the second.
  const ProjectionPlan p = plan_multiview(1, 4, 2, 2);
  REQUIRE(p.references.size() == 2);
  const LabelMap ref = row_map({0, 0, 1, 0, 0, 0}, 2);
  std::map<ViewIndex, LabelMap> labels{{{1, 1}, ref}, {{1, 3}, ref}};
  std::map<ViewIndex, SuperRayTable> tables{
      {{1, 1}, table_of({0.0f, 0.0f})}, {{1, 3}, table_of({0.0f, 2.0f})}};
  const auto views = run_plan(p, labels, tables);
  CHECK(row_of(views[1]) == std::vector<int32_t>{0, 0, 1, 0, 0, 0});
  CHECK(row_of(views[3]) == std::vector<int32_t>{1, 0, 0, 0, 0, 0});
}

TEST_CASE("projection quality is exactly one only for identical maps") {
  const RenderedLightField r = render_lf(disjoint_scene());
  const LabelMap& gt = r.labels[4];

  CHECK(projection_quality(gt, gt) == 1.0);

  const LabelMap zeros(20, 20, 3, 0);
  const double degraded = projection_quality(gt, zeros);
  CHECK(degraded < 1.0);

  LabelMap relabeled = gt;
  for (auto& p : relabeled.labels.pixels()) {
    if (p == 2) p = 0;
  }
  const double partial = projection_quality(gt, relabeled);
  CHECK(partial < 1.0);
  CHECK(partial > 0.0);
  CHECK(partial > degraded);

  LabelMap small(5, 5, 2, 0);
  CHECK_THROWS_AS(projection_quality(gt, small), DataError);
}

TEST_CASE("quality matrix is one everywhere for exact projection") {
  const RenderedLightField r = render_lf(disjoint_scene());
  for (const ProjectionPlan& plan :
       {plan_topleft(3, 3), plan_center(3, 3), plan_multiview(3, 3, 2, 2)}) {
    const QualityMatrix m =
        quality_matrix(plan, r.labels, tables_at_references(plan, r));
    for (double v : m.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
    for (const ViewIndex& ref : plan.references) {
      CHECK(m.at(ref.row, ref.col) == 1.0);
    }
  }
}

TEST_CASE("quality matrix csv roundtrip keeps three decimals") {
  testutil::TempDir dir;
  QualityMatrix m;
  m.n_rows = 2;
  m.n_cols = 3;
  m.values = {1.0, 0.958, 0.941, 0.932, 0.925, 0.919};
  save_quality_matrix(dir / "m.csv", m);
  const QualityMatrix back = load_quality_matrix(dir / "m.csv");
  CHECK(back.n_rows == 2);
  CHECK(back.n_cols == 3);
  for (size_t i = 0; i < m.values.size(); ++i) {
    CHECK(back.values[i] == doctest::Approx(m.values[i]).epsilon(1e-9));
  }
}

TEST_CASE("reference spacing from the published quality curves") {
  // Horizontal and vertical curves of the two 9x9 single-reference quality
  // matrices used for the multi-view layouts.
  const RefSelectionInput greek_row{
      {1, 2, 3, 4, 5, 6, 7, 8},
      {0.958, 0.941, 0.931, 0.927, 0.924, 0.921, 0.922, 0.918}};
  const RefSelectionInput greek_col{
      {1, 2, 3, 4, 5, 6, 7, 8},
      {0.941, 0.915, 0.898, 0.889, 0.887, 0.889, 0.884, 0.877}};
  const RefSelectionInput sideboard_row{
      {1, 2, 3, 4, 5, 6, 7, 8},
      {0.952, 0.927, 0.914, 0.911, 0.906, 0.901, 0.901, 0.895}};
  const RefSelectionInput sideboard_col{
      {1, 2, 3, 4, 5, 6, 7, 8},
      {0.949, 0.919, 0.904, 0.882, 0.877, 0.867, 0.863, 0.860}};

  CHECK(select_reference_spacing(greek_row) == 4);
  CHECK(select_reference_spacing(greek_col) == 4);
  CHECK(select_reference_spacing(sideboard_row) == 3);
  CHECK(select_reference_spacing(sideboard_col) == 4);
}

TEST_CASE("reference spacing edge rules") {
  SUBCASE("a linear decay keeps all candidates and picks the middle") {
    RefSelectionInput in;
    for (int k = 1; k <= 7; ++k) {
      in.k.push_back(k);
      in.ssim.push_back(1.0 - 0.01 * k);
    }
    CHECK(select_reference_spacing(in) == 4);
  }
  SUBCASE("fewer than two points is an error") {
    CHECK_THROWS_AS(select_reference_spacing({{1}, {0.9}}), DataError);
    CHECK_THROWS_AS(select_reference_spacing({{}, {}}), DataError);
  }
  SUBCASE("k must increase strictly") {
    CHECK_THROWS_AS(select_reference_spacing({{1, 1}, {0.9, 0.8}}), DataError);
  }
  SUBCASE("the choice is invariant to affine rescaling of the curve") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> step(0.001, 0.05);
    std::uniform_real_distribution<double> scale(0.1, 90.0);
    std::uniform_real_distribution<double> offset(-5.0, 5.0);
    for (int trial = 0; trial < 100; ++trial) {
      RefSelectionInput in;
      double v = 1.0;
      for (int k = 1; k <= 8; ++k) {
        in.k.push_back(k);
        v -= step(rng);
        in.ssim.push_back(v);
      }
      const int base = select_reference_spacing(in);
      RefSelectionInput rescaled = in;
      const double a = scale(rng);
      const double b = offset(rng);
      for (double& s : rescaled.ssim) s = a * s + b;
      CHECK(select_reference_spacing(rescaled) == base);
    }
  }
}

TEST_CASE("spacings_from_matrix reads the first row and column") {
  QualityMatrix m;
  m.n_rows = 9;
  m.n_cols = 9;
  m.values.assign(81, 0.5);
  const std::vector<double> row = {1.0,   0.958, 0.941, 0.931, 0.927,
                                   0.924, 0.921, 0.922, 0.918};
  const std::vector<double> col = {1.0,   0.941, 0.915, 0.898, 0.889,
                                   0.887, 0.889, 0.884, 0.877};
  for (int c = 1; c <= 9; ++c) m.at(1, c) = row[c - 1];
  for (int r = 1; r <= 9; ++r) m.at(r, 1) = col[r - 1];
  CHECK(spacings_from_matrix(m) == std::pair<int, int>{4, 4});
}

TEST_SUITE_END();
