// Copyright 2026 The lfgc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef LFGC_GRAPH_HPP
#define LFGC_GRAPH_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lfgc/light_field.hpp"
#include "lfgc/projection.hpp"

namespace lfgc {

struct GraphNode {
  ViewIndex view;
  int y = 0;
  int x = 0;

  friend bool operator==(const GraphNode&, const GraphNode&) = default;
};

struct GraphEdge {
  int32_t a = 0;  // always a < b
  int32_t b = 0;
  double weight = 1.0;

  friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

/// One super-ray: the pixels of one label across a set of views, their
/// luminance samples, and the spatial + angular connectivity. Nodes are
/// ordered by (view row, view col, y, x); edges are sorted and unique.
struct SuperRayGraph {
  int32_t label = 0;
  std::vector<GraphNode> nodes;
  std::vector<GraphEdge> edges;
  std::vector<double> signal;

  size_t size() const { return nodes.size(); }
};

/// Builds the super-ray of `label` over `views`. Every view must be present
/// in the light field and covered by a label map of matching size; the label
/// must occur somewhere in the block. Spatial edges join 4-neighbor pixels
/// of equal label inside a view. Angular edges join each pixel to its
/// disparity correspondent (shift by the rounded median disparity, following
/// the projection sign convention) in the views one step right and one step
/// down, when those belong to `views` and carry the same label.
SuperRayGraph build_superray_graph(const LightFieldGrid& lf,
                                   const std::vector<LabelMap>& labels,
                                   const SuperRayTable& table, int32_t label,
                                   const std::vector<ViewIndex>& views);

/// All labels at once; entry l is the (possibly empty) super-ray of label l.
std::vector<SuperRayGraph> build_superray_graphs(
    const LightFieldGrid& lf, const std::vector<LabelMap>& labels,
    const SuperRayTable& table, const std::vector<ViewIndex>& views);

/// The super-rays of one plan block, empty labels dropped.
struct SubGlobalGraph {
  int block_id = 0;
  int row0 = 1, row1 = 1, col0 = 1, col1 = 1;
  std::vector<SuperRayGraph> superrays;
};

SubGlobalGraph build_block_graph(const LightFieldGrid& lf,
                                 const ProjectionPlan::Block& block,
                                 int block_id,
                                 const std::vector<LabelMap>& labels,
                                 const SuperRayTable& table);

/// One sub-global graph per block of a multi-view plan. `labels` covers the
/// whole grid (row-major); `tables` holds each reference's super-ray table.
std::vector<SubGlobalGraph> build_subglobal_graphs(
    const LightFieldGrid& lf, const ProjectionPlan& plan,
    const std::vector<LabelMap>& labels,
    const std::map<ViewIndex, SuperRayTable>& tables);

/// Combinatorial Laplacian L = D - A, dense row-major n x n.
std::vector<double> laplacian_dense(const SuperRayGraph& g);

/// Laplacian eigenpairs, eigenvalues ascending. Eigenvectors are stored
/// column-major (column k = eigenvectors[k*n .. k*n+n)), each with its first
/// nonzero entry positive; equal eigenvalues are ordered by lexicographic
/// comparison of the canonicalized vectors so the basis is reproducible.
struct SpectralBasis {
  int32_t n = 0;
  std::vector<double> eigenvalues;
  std::vector<double> eigenvectors;
};

SpectralBasis compute_basis(const SuperRayGraph& g);

std::vector<double> gft(const SpectralBasis& basis,
                        const std::vector<double>& signal);
std::vector<double> igft(const SpectralBasis& basis,
                         const std::vector<double>& coefficients);

/// Result of reducing one super-ray to transformable pieces: each part is
/// either the graph itself, an accepted coarsening of it, or a leaf of the
/// recursive bipartition. fine_nodes maps every part node to the original
/// node indices it stands for; the union over all parts is a partition of
/// the original node set. `decisions` records, in emission order, whether
/// each successful coarsening attempt was accepted (1) or rejected in favor
/// of a split (0); the decoder replays the same traversal from these bits.
struct ReducedGraphs {
  struct Part {
    SuperRayGraph graph;
    std::vector<std::vector<int32_t>> fine_nodes;
  };
  std::vector<Part> parts;
  std::vector<uint8_t> decisions;
};

/// Reduces g below max_nodes: graphs at or under the limit pass through
/// unchanged; larger ones are coarsened by repeated heavy-edge matching
/// (merged signals averaged, parallel edge weights summed) and the result is
/// kept when the expand-by-copy reconstruction reaches psnr_min dB (peak
/// 255), otherwise the nodes are split at the median of the Fiedler vector
/// and both halves are reduced recursively.
ReducedGraphs coarsen_or_partition(const SuperRayGraph& g, int max_nodes,
                                   double psnr_min);

/// Rebuilds the exact part structure of coarsen_or_partition from the graph
/// structure alone, pulling one recorded decision per coarsening attempt
/// from `next_decision`; the signal plays no role.
ReducedGraphs replay_reduction(const SuperRayGraph& g, int max_nodes,
                               const std::function<int()>& next_decision);

/// Convenience overload reading decisions from a vector; `cursor` advances
/// past the consumed bits.
ReducedGraphs replay_reduction(const SuperRayGraph& g, int max_nodes,
                               const std::vector<uint8_t>& decisions,
                               size_t& cursor);

/// Debug dump: {"label":..,"nodes":[[row,col,y,x],..],"edges":[[a,b,w],..]}.
std::string graph_to_json(const SuperRayGraph& g);

}  // namespace lfgc

#endif
