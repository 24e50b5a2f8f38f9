// Copyright 2026 The lfgc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef LFGC_PROJECTION_HPP
#define LFGC_PROJECTION_HPP

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "lfgc/image.hpp"
#include "lfgc/light_field.hpp"

namespace lfgc {

/// Sign convention used everywhere: moving one view to the right shifts
/// content with positive disparity one step to the left,
///   target_col = source_col - delta_col * d
///   target_row = source_row - delta_row * d
/// with (delta_row, delta_col) the view offset and one scalar disparity
/// applied per axis.

enum class Scheme { kTopLeft, kCenter, kMultiView };

std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string& name);

struct PlanEdge {
  ViewIndex src;
  ViewIndex dst;
  friend bool operator==(const PlanEdge&, const PlanEdge&) = default;
};

/// A projection plan is a forest over the view grid: every non-reference
/// view is the target of exactly one edge, every edge moves a single view
/// step, and edges never cross block boundaries.
struct ProjectionPlan {
  Scheme scheme = Scheme::kTopLeft;
  int n_rows = 0;
  int n_cols = 0;
  int k_h = 0;  // multi-view reference spacing, 0 otherwise
  int k_v = 0;
  std::vector<ViewIndex> references;
  std::vector<PlanEdge> edges;

  struct Block {
    ViewIndex reference;
    int row0 = 0, row1 = 0, col0 = 0, col1 = 0;  // inclusive view range
    friend bool operator==(const Block&, const Block&) = default;
  };
  std::vector<Block> blocks;
};

/// Row-by-row chaining from view (1,1): the first row left to right, then
/// one vertical step into each next row's first view followed by that row.
ProjectionPlan plan_topleft(int n_rows, int n_cols);

/// Symmetric spread from the central view of an odd x odd grid: the center
/// column outward, then every row outward from its center-column view.
ProjectionPlan plan_center(int n_rows, int n_cols);

/// References every k_h-th column and k_v-th row starting at (1,1); a
/// candidate in the last row or column is dropped because no views follow
/// it. Each reference serves its block with the top-left pattern.
ProjectionPlan plan_multiview(int n_rows, int n_cols, int k_h, int k_v);

/// Structural validation of the forest and block properties above.
/// Throws DataError with the first violation found.
void validate_plan(const ProjectionPlan& plan);

/// Largest cumulative per-axis view distance between any view and the root
/// of its chain.
int max_axis_distance(const ProjectionPlan& plan);

/// Longest chain length in edges.
int max_hop_count(const ProjectionPlan& plan);

std::string plan_to_json(const ProjectionPlan& plan);
ProjectionPlan plan_from_json(const std::string& text);

struct ProjectionOptions {
  /// Collision rule when two source pixels land on one target: by default
  /// the larger |median disparity| wins (nearer content occludes). Flip to
  /// let the smaller magnitude win. Equal magnitudes go to the lower label.
  bool prefer_larger_disparity = true;
};

/// Projects a label map one plan edge, shifting every pixel of label l by
/// the view offset times its median disparity, rounded to the nearest
/// pixel. Uncovered pixels are filled breadth-first from assigned pixels,
/// lower label winning ties. Output never contains holes.
/// Throws DataError when a label has no table entry.
LabelMap project_labels(const LabelMap& src, const SuperRayTable& table,
                        ViewIndex src_view, ViewIndex dst_view,
                        const ProjectionOptions& options = {});

/// Executes every edge in plan order. Reference views keep their own label
/// maps; each edge projects with the table of its chain's reference.
/// Returns one label map per view, row-major.
std::vector<LabelMap> run_plan(
    const ProjectionPlan& plan,
    const std::map<ViewIndex, LabelMap>& ref_labels,
    const std::map<ViewIndex, SuperRayTable>& ref_tables,
    const ProjectionOptions& options = {});

/// SSIM of two label maps viewed as intensity images with dynamic range
/// L = max(n_labels - 1, 1) taken from the ground truth map.
double projection_quality(const LabelMap& gt, const LabelMap& projected);

struct QualityMatrix {
  int n_rows = 0;
  int n_cols = 0;
  std::vector<double> values;  // row-major

  double& at(int row, int col) {
    return values[static_cast<size_t>(row - 1) * n_cols + (col - 1)];
  }
  double at(int row, int col) const {
    return values[static_cast<size_t>(row - 1) * n_cols + (col - 1)];
  }
};

/// Runs the plan against per-view ground-truth labels (the reference label
/// maps are taken from the ground truth at the reference positions) and
/// scores every view. Reference entries are exactly 1.
QualityMatrix quality_matrix(
    const ProjectionPlan& plan, const std::vector<LabelMap>& gt_labels,
    const std::map<ViewIndex, SuperRayTable>& ref_tables,
    const ProjectionOptions& options = {});

void save_quality_matrix(const std::filesystem::path& path,
                         const QualityMatrix& m);
QualityMatrix load_quality_matrix(const std::filesystem::path& path);

/// Projection quality of the views of one grid direction, at strictly
/// increasing distances k from the reference.
struct RefSelectionInput {
  std::vector<int> k;
  std::vector<double> ssim;
};

/// Picks the next reference distance: candidates are the direction's views
/// except the terminal one (nothing would follow it), the lower convex hull
/// of (k, ssim) keeps collinear points, and the hull point at index
/// hull_size/2 is chosen. Scale-free in ssim. Requires >= 2 input points.
int select_reference_spacing(const RefSelectionInput& input);

/// Reference spacings (horizontal, vertical) from a quality matrix whose
/// reference sits at (1,1): the horizontal curve is the first row, the
/// vertical curve the first column, distances k = 1..extent-1.
std::pair<int, int> spacings_from_matrix(const QualityMatrix& m);

}  // namespace lfgc

#endif
