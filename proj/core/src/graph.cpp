// Copyright 2026 The lfgc Authors
// SPDX-License-Identifier: Apache-2.0

#include "lfgc/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <utility>

#include <Eigen/Dense>
#include <json.hpp>

#include "lfgc/errors.hpp"

namespace lfgc {

namespace {

constexpr double kSignEps = 1e-12;
constexpr double kTieEps = 1e-9;

std::vector<ViewIndex> sorted_unique_views(std::vector<ViewIndex> views) {
  if (views.empty()) throw DataError("super-ray build: no views given");
  std::sort(views.begin(), views.end());
  if (std::adjacent_find(views.begin(), views.end()) != views.end()) {
    throw DataError("super-ray build: duplicate view");
  }
  return views;
}

// Builds every super-ray over `views` in one sweep; when only_label >= 0
// all other labels are skipped. Output entry l holds label l.
std::vector<SuperRayGraph> build_impl(const LightFieldGrid& lf,
                                      const std::vector<LabelMap>& labels,
                                      const SuperRayTable& table,
                                      const std::vector<ViewIndex>& views_in,
                                      int32_t only_label) {
  const std::vector<ViewIndex> views = sorted_unique_views(views_in);
  const size_t grid_views = static_cast<size_t>(lf.n_rows) * lf.n_cols;
  if (labels.size() != grid_views) {
    throw DataError("super-ray build: label map count does not match grid");
  }
  const int n_labels = static_cast<int>(table.entries.size());
  const int h = lf.height;
  const int w = lf.width;

  auto grid_index = [&](ViewIndex v) {
    if (v.row < 1 || v.row > lf.n_rows || v.col < 1 || v.col > lf.n_cols) {
      throw DataError("super-ray build: view " + to_string(v) +
                      " outside the grid");
    }
    return static_cast<size_t>(v.row - 1) * lf.n_cols + (v.col - 1);
  };
  std::map<ViewIndex, size_t> view_pos;
  for (size_t vi = 0; vi < views.size(); ++vi) view_pos[views[vi]] = vi;

  std::vector<SuperRayGraph> graphs(static_cast<size_t>(n_labels));
  for (int l = 0; l < n_labels; ++l) graphs[static_cast<size_t>(l)].label = l;

  std::vector<Image<int32_t>> node_id(views.size());
  for (size_t vi = 0; vi < views.size(); ++vi) {
    const ViewIndex v = views[vi];
    const ViewImage& img = lf.view(v);
    const LabelMap& lm = labels[grid_index(v)];
    if (img.height() != h || img.width() != w) {
      throw DataError("super-ray build: view " + to_string(v) + " missing");
    }
    if (lm.labels.height() != h || lm.labels.width() != w) {
      throw DataError("super-ray build: label map size mismatch at " +
                      to_string(v));
    }
    node_id[vi] = Image<int32_t>(h, w);
    std::fill(node_id[vi].pixels().begin(), node_id[vi].pixels().end(), -1);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const int32_t lab = lm.labels.at(y, x);
        if (lab < 0 || lab >= n_labels) {
          throw DataError("super-ray build: label " + std::to_string(lab) +
                          " has no table entry");
        }
        if (only_label >= 0 && lab != only_label) continue;
        SuperRayGraph& g = graphs[static_cast<size_t>(lab)];
        node_id[vi].at(y, x) = static_cast<int32_t>(g.nodes.size());
        g.nodes.push_back({v, y, x});
        g.signal.push_back(static_cast<double>(img.at(y, x)));
      }
    }
  }

  std::vector<int> shift(static_cast<size_t>(n_labels));
  for (int l = 0; l < n_labels; ++l) {
    shift[static_cast<size_t>(l)] = static_cast<int>(
        std::lround(table.entries[static_cast<size_t>(l)].median_disparity));
  }

  for (size_t vi = 0; vi < views.size(); ++vi) {
    const ViewIndex v = views[vi];
    const LabelMap& lm = labels[grid_index(v)];
    const auto right = view_pos.find({v.row, v.col + 1});
    const auto down = view_pos.find({v.row + 1, v.col});
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const int32_t a = node_id[vi].at(y, x);
        if (a < 0) continue;
        const int32_t lab = lm.labels.at(y, x);
        SuperRayGraph& g = graphs[static_cast<size_t>(lab)];
        if (x + 1 < w && lm.labels.at(y, x + 1) == lab) {
          g.edges.push_back({a, node_id[vi].at(y, x + 1), 1.0});
        }
        if (y + 1 < h && lm.labels.at(y + 1, x) == lab) {
          g.edges.push_back({a, node_id[vi].at(y + 1, x), 1.0});
        }
        const int s = shift[static_cast<size_t>(lab)];
        if (right != view_pos.end()) {
          const int tx = x - s;
          if (tx >= 0 && tx < w &&
              labels[grid_index(views[right->second])].labels.at(y, tx) ==
                  lab) {
            const int32_t b = node_id[right->second].at(y, tx);
            if (b >= 0) g.edges.push_back({a, b, 1.0});
          }
        }
        if (down != view_pos.end()) {
          const int ty = y - s;
          if (ty >= 0 && ty < h &&
              labels[grid_index(views[down->second])].labels.at(ty, x) ==
                  lab) {
            const int32_t b = node_id[down->second].at(ty, x);
            if (b >= 0) g.edges.push_back({a, b, 1.0});
          }
        }
      }
    }
  }
  return graphs;
}

}  // namespace

SuperRayGraph build_superray_graph(const LightFieldGrid& lf,
                                   const std::vector<LabelMap>& labels,
                                   const SuperRayTable& table, int32_t label,
                                   const std::vector<ViewIndex>& views) {
  if (label < 0 || static_cast<size_t>(label) >= table.entries.size()) {
    throw DataError("super-ray build: label " + std::to_string(label) +
                    " has no table entry");
  }
  std::vector<SuperRayGraph> graphs =
      build_impl(lf, labels, table, views, label);
  SuperRayGraph g = std::move(graphs[static_cast<size_t>(label)]);
  if (g.nodes.empty()) {
    throw DataError("super-ray build: label " + std::to_string(label) +
                    " absent from block");
  }
  return g;
}

std::vector<SuperRayGraph> build_superray_graphs(
    const LightFieldGrid& lf, const std::vector<LabelMap>& labels,
    const SuperRayTable& table, const std::vector<ViewIndex>& views) {
  return build_impl(lf, labels, table, views, -1);
}

SubGlobalGraph build_block_graph(const LightFieldGrid& lf,
                                 const ProjectionPlan::Block& block,
                                 int block_id,
                                 const std::vector<LabelMap>& labels,
                                 const SuperRayTable& table) {
  SubGlobalGraph sub;
  sub.block_id = block_id;
  sub.row0 = block.row0;
  sub.row1 = block.row1;
  sub.col0 = block.col0;
  sub.col1 = block.col1;
  std::vector<ViewIndex> views;
  for (int r = block.row0; r <= block.row1; ++r) {
    for (int c = block.col0; c <= block.col1; ++c) views.push_back({r, c});
  }
  std::vector<SuperRayGraph> graphs =
      build_superray_graphs(lf, labels, table, views);
  for (SuperRayGraph& g : graphs) {
    if (!g.nodes.empty()) sub.superrays.push_back(std::move(g));
  }
  return sub;
}

std::vector<SubGlobalGraph> build_subglobal_graphs(
    const LightFieldGrid& lf, const ProjectionPlan& plan,
    const std::vector<LabelMap>& labels,
    const std::map<ViewIndex, SuperRayTable>& tables) {
  if (plan.scheme != Scheme::kMultiView) {
    throw DataError("sub-global graphs need a multi-view plan");
  }
  validate_plan(plan);
  std::vector<SubGlobalGraph> out;
  for (size_t b = 0; b < plan.blocks.size(); ++b) {
    const auto it = tables.find(plan.blocks[b].reference);
    if (it == tables.end()) {
      throw DataError("missing super-ray table for reference " +
                      to_string(plan.blocks[b].reference));
    }
    out.push_back(build_block_graph(lf, plan.blocks[b], static_cast<int>(b),
                                    labels, it->second));
  }
  return out;
}

std::vector<double> laplacian_dense(const SuperRayGraph& g) {
  const size_t n = g.size();
  if (n == 0) throw DataError("laplacian: empty graph");
  std::vector<double> L(n * n, 0.0);
  for (const GraphEdge& e : g.edges) {
    const size_t a = static_cast<size_t>(e.a);
    const size_t b = static_cast<size_t>(e.b);
    if (a >= n || b >= n || a == b) throw InternalError("laplacian: bad edge");
    L[a * n + b] -= e.weight;
    L[b * n + a] -= e.weight;
    L[a * n + a] += e.weight;
    L[b * n + b] += e.weight;
  }
  return L;
}

SpectralBasis compute_basis(const SuperRayGraph& g) {
  const std::vector<double> L = laplacian_dense(g);
  const int n = static_cast<int>(g.size());
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                 Eigen::RowMajor>>
      M(L.data(), n, n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(M);
  if (solver.info() != Eigen::Success) {
    throw InternalError("eigendecomposition did not converge");
  }
  Eigen::VectorXd values = solver.eigenvalues();
  Eigen::MatrixXd vectors = solver.eigenvectors();

  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      const double v = vectors(i, k);
      if (std::abs(v) > kSignEps) {
        if (v < 0.0) vectors.col(k) = -vectors.col(k);
        break;
      }
    }
  }

  // Ascending eigenvalues; within a run of (numerically) equal values the
  // canonicalized vectors are ordered lexicographically so repeated runs
  // of the solver always present the basis the same way.
  std::vector<int> order(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) order[static_cast<size_t>(k)] = k;
  auto lex_less = [&](int a, int b) {
    for (int i = 0; i < n; ++i) {
      if (vectors(i, a) != vectors(i, b)) return vectors(i, a) < vectors(i, b);
    }
    return false;
  };
  size_t run_start = 0;
  for (size_t k = 1; k <= order.size(); ++k) {
    if (k == order.size() ||
        values(static_cast<int>(k)) - values(static_cast<int>(k - 1)) >
            kTieEps) {
      std::sort(order.begin() + static_cast<long>(run_start),
                order.begin() + static_cast<long>(k), lex_less);
      run_start = k;
    }
  }

  SpectralBasis basis;
  basis.n = n;
  basis.eigenvalues.resize(static_cast<size_t>(n));
  basis.eigenvectors.resize(static_cast<size_t>(n) * n);
  for (int k = 0; k < n; ++k) {
    const int src = order[static_cast<size_t>(k)];
    basis.eigenvalues[static_cast<size_t>(k)] = values(src);
    for (int i = 0; i < n; ++i) {
      basis.eigenvectors[static_cast<size_t>(k) * n + i] = vectors(i, src);
    }
  }
  return basis;
}

std::vector<double> gft(const SpectralBasis& basis,
                        const std::vector<double>& signal) {
  const int n = basis.n;
  if (static_cast<int>(signal.size()) != n) {
    throw DataError("gft: signal length does not match basis");
  }
  Eigen::Map<const Eigen::MatrixXd> U(basis.eigenvectors.data(), n, n);
  Eigen::Map<const Eigen::VectorXd> s(signal.data(), n);
  Eigen::VectorXd c = U.transpose() * s;
  return std::vector<double>(c.data(), c.data() + n);
}

std::vector<double> igft(const SpectralBasis& basis,
                         const std::vector<double>& coefficients) {
  const int n = basis.n;
  if (static_cast<int>(coefficients.size()) != n) {
    throw DataError("igft: coefficient length does not match basis");
  }
  Eigen::Map<const Eigen::MatrixXd> U(basis.eigenvectors.data(), n, n);
  Eigen::Map<const Eigen::VectorXd> c(coefficients.data(), n);
  Eigen::VectorXd s = U * c;
  return std::vector<double>(s.data(), s.data() + n);
}

namespace {

uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

struct Coarsened {
  bool reached = false;
  SuperRayGraph graph;
  std::vector<std::vector<int32_t>> children;
};

std::vector<std::vector<int32_t>> adjacency(const SuperRayGraph& g) {
  std::vector<std::vector<int32_t>> adj(g.size());
  for (size_t e = 0; e < g.edges.size(); ++e) {
    adj[static_cast<size_t>(g.edges[e].a)].push_back(static_cast<int32_t>(e));
    adj[static_cast<size_t>(g.edges[e].b)].push_back(static_cast<int32_t>(e));
  }
  return adj;
}

// Repeated heavy-edge matching until at most max_nodes nodes remain. Fails
// only when a pass matches nothing, which means the graph has no edges
// left to contract. Structure-only apart from averaging signals, so the
// decoder reproduces it without knowing the signal.
Coarsened hem_coarsen(const SuperRayGraph& g, int max_nodes) {
  Coarsened cur;
  cur.graph = g;
  cur.children.resize(g.size());
  for (size_t i = 0; i < g.size(); ++i) {
    cur.children[i] = {static_cast<int32_t>(i)};
  }
  while (static_cast<int>(cur.graph.size()) > max_nodes) {
    const SuperRayGraph& f = cur.graph;
    const size_t n = f.size();
    const std::vector<std::vector<int32_t>> adj = adjacency(f);
    std::vector<int32_t> match(n, -1);
    size_t n_pairs = 0;
    for (size_t i = 0; i < n; ++i) {
      if (match[i] != -1) continue;
      int32_t best = -1;
      double best_w = 0.0;
      for (int32_t ei : adj[i]) {
        const GraphEdge& e = f.edges[static_cast<size_t>(ei)];
        const int32_t nb = e.a == static_cast<int32_t>(i) ? e.b : e.a;
        if (match[static_cast<size_t>(nb)] != -1) continue;
        if (e.weight > best_w || (e.weight == best_w && (best == -1 || nb < best))) {
          best = nb;
          best_w = e.weight;
        }
      }
      if (best != -1) {
        match[i] = best;
        match[static_cast<size_t>(best)] = static_cast<int32_t>(i);
        ++n_pairs;
      }
    }
    if (n_pairs == 0) return cur;

    std::vector<int32_t> coarse_of(n, -1);
    SuperRayGraph coarse;
    coarse.label = f.label;
    std::vector<std::vector<int32_t>> coarse_children;
    for (size_t i = 0; i < n; ++i) {
      if (coarse_of[i] != -1) continue;
      const int32_t c = static_cast<int32_t>(coarse.nodes.size());
      coarse_of[i] = c;
      coarse.nodes.push_back(f.nodes[i]);
      double s = f.signal[i];
      std::vector<int32_t> kids = cur.children[i];
      if (match[i] != -1) {
        const size_t j = static_cast<size_t>(match[i]);
        coarse_of[j] = c;
        s = (s + f.signal[j]) / 2.0;
        kids.insert(kids.end(), cur.children[j].begin(),
                    cur.children[j].end());
      }
      coarse.signal.push_back(s);
      coarse_children.push_back(std::move(kids));
    }
    std::map<std::pair<int32_t, int32_t>, double> merged;
    for (const GraphEdge& e : f.edges) {
      const int32_t ca = coarse_of[static_cast<size_t>(e.a)];
      const int32_t cb = coarse_of[static_cast<size_t>(e.b)];
      if (ca == cb) continue;
      merged[{std::min(ca, cb), std::max(ca, cb)}] += e.weight;
    }
    for (const auto& [key, weight] : merged) {
      coarse.edges.push_back({key.first, key.second, weight});
    }
    cur.graph = std::move(coarse);
    cur.children = std::move(coarse_children);
  }
  cur.reached = true;
  return cur;
}

// Second-smallest Laplacian eigenvector by power iteration on sigma*I - L
// with the constant vector deflated. Matrix-free, deterministic start.
std::vector<double> fiedler_vector(const SuperRayGraph& g) {
  const size_t n = g.size();
  std::vector<double> degree(n, 0.0);
  for (const GraphEdge& e : g.edges) {
    degree[static_cast<size_t>(e.a)] += e.weight;
    degree[static_cast<size_t>(e.b)] += e.weight;
  }
  const double sigma =
      2.0 * *std::max_element(degree.begin(), degree.end()) + 1.0;

  std::vector<double> x(n), y(n);
  for (size_t i = 0; i < n; ++i) {
    x[i] = static_cast<double>(splitmix64(i) >> 11) / 9007199254740992.0 - 0.5;
  }
  auto remove_mean_and_normalize = [&](std::vector<double>& v) {
    double mean = 0.0;
    for (double t : v) mean += t;
    mean /= static_cast<double>(n);
    double norm = 0.0;
    for (double& t : v) {
      t -= mean;
      norm += t * t;
    }
    norm = std::sqrt(norm);
    if (norm < 1e-300) {
      v[0] = 1.0;  // degenerate start, any fixed direction will do
      return;
    }
    for (double& t : v) t /= norm;
  };
  remove_mean_and_normalize(x);
  for (int iter = 0; iter < 500; ++iter) {
    for (size_t i = 0; i < n; ++i) y[i] = (sigma - degree[i]) * x[i];
    for (const GraphEdge& e : g.edges) {
      y[static_cast<size_t>(e.a)] += e.weight * x[static_cast<size_t>(e.b)];
      y[static_cast<size_t>(e.b)] += e.weight * x[static_cast<size_t>(e.a)];
    }
    remove_mean_and_normalize(y);
    double delta = 0.0;
    for (size_t i = 0; i < n; ++i) {
      delta = std::max(delta, std::abs(y[i] - x[i]));
    }
    x.swap(y);
    if (delta < 1e-12) break;
  }
  return x;
}

SuperRayGraph induce(const SuperRayGraph& g, const std::vector<int32_t>& ids) {
  std::vector<int32_t> pos(g.size(), -1);
  SuperRayGraph sub;
  sub.label = g.label;
  for (size_t k = 0; k < ids.size(); ++k) {
    pos[static_cast<size_t>(ids[k])] = static_cast<int32_t>(k);
    sub.nodes.push_back(g.nodes[static_cast<size_t>(ids[k])]);
    sub.signal.push_back(g.signal[static_cast<size_t>(ids[k])]);
  }
  for (const GraphEdge& e : g.edges) {
    const int32_t a = pos[static_cast<size_t>(e.a)];
    const int32_t b = pos[static_cast<size_t>(e.b)];
    if (a >= 0 && b >= 0) sub.edges.push_back({a, b, e.weight});
  }
  return sub;
}

void reduce_rec(const SuperRayGraph& g, const std::vector<int32_t>& to_orig,
                int max_nodes, double psnr_min,
                const std::function<int()>* replay, ReducedGraphs& out) {
  if (static_cast<int>(g.size()) <= max_nodes) {
    ReducedGraphs::Part part;
    part.graph = g;
    part.fine_nodes.resize(g.size());
    for (size_t i = 0; i < g.size(); ++i) part.fine_nodes[i] = {to_orig[i]};
    out.parts.push_back(std::move(part));
    return;
  }

  const Coarsened hem = hem_coarsen(g, max_nodes);
  bool accept = false;
  if (hem.reached) {
    if (replay != nullptr) {
      accept = (*replay)() != 0;
    } else {
      double mse = 0.0;
      for (size_t c = 0; c < hem.graph.size(); ++c) {
        for (int32_t f : hem.children[c]) {
          const double d =
              g.signal[static_cast<size_t>(f)] - hem.graph.signal[c];
          mse += d * d;
        }
      }
      mse /= static_cast<double>(g.size());
      accept = mse == 0.0 ||
               10.0 * std::log10(255.0 * 255.0 / mse) >= psnr_min;
      out.decisions.push_back(accept ? 1 : 0);
    }
  }
  if (accept) {
    ReducedGraphs::Part part;
    part.graph = hem.graph;
    part.fine_nodes.resize(hem.children.size());
    for (size_t c = 0; c < hem.children.size(); ++c) {
      for (int32_t f : hem.children[c]) {
        part.fine_nodes[c].push_back(to_orig[static_cast<size_t>(f)]);
      }
    }
    out.parts.push_back(std::move(part));
    return;
  }

  const std::vector<double> fiedler = fiedler_vector(g);
  std::vector<int32_t> order(g.size());
  for (size_t i = 0; i < g.size(); ++i) order[i] = static_cast<int32_t>(i);
  std::sort(order.begin(), order.end(), [&](int32_t a, int32_t b) {
    const double fa = fiedler[static_cast<size_t>(a)];
    const double fb = fiedler[static_cast<size_t>(b)];
    return fa != fb ? fa < fb : a < b;
  });
  const size_t half = g.size() / 2;
  std::vector<int32_t> low(order.begin(), order.begin() + static_cast<long>(half));
  std::vector<int32_t> high(order.begin() + static_cast<long>(half), order.end());
  std::sort(low.begin(), low.end());
  std::sort(high.begin(), high.end());
  for (const std::vector<int32_t>& side : {low, high}) {
    std::vector<int32_t> sub_orig;
    sub_orig.reserve(side.size());
    for (int32_t i : side) sub_orig.push_back(to_orig[static_cast<size_t>(i)]);
    reduce_rec(induce(g, side), sub_orig, max_nodes, psnr_min, replay, out);
  }
}

std::vector<int32_t> identity_map(size_t n) {
  std::vector<int32_t> ids(n);
  for (size_t i = 0; i < n; ++i) ids[i] = static_cast<int32_t>(i);
  return ids;
}

}  // namespace

ReducedGraphs coarsen_or_partition(const SuperRayGraph& g, int max_nodes,
                                   double psnr_min) {
  if (max_nodes < 2) throw DataError("coarsen_or_partition: max_nodes < 2");
  if (g.nodes.empty()) throw DataError("coarsen_or_partition: empty graph");
  ReducedGraphs out;
  reduce_rec(g, identity_map(g.size()), max_nodes, psnr_min, nullptr, out);
  return out;
}

ReducedGraphs replay_reduction(const SuperRayGraph& g, int max_nodes,
                               const std::function<int()>& next_decision) {
  if (max_nodes < 2) throw DataError("replay_reduction: max_nodes < 2");
  if (g.nodes.empty()) throw DataError("replay_reduction: empty graph");
  ReducedGraphs out;
  reduce_rec(g, identity_map(g.size()), max_nodes, 0.0, &next_decision, out);
  return out;
}

ReducedGraphs replay_reduction(const SuperRayGraph& g, int max_nodes,
                               const std::vector<uint8_t>& decisions,
                               size_t& cursor) {
  return replay_reduction(g, max_nodes, [&]() -> int {
    if (cursor >= decisions.size()) {
      throw DataError("malformed stream: reduction decisions exhausted");
    }
    return decisions[cursor++];
  });
}

std::string graph_to_json(const SuperRayGraph& g) {
  nlohmann::json nodes = nlohmann::json::array();
  for (const GraphNode& node : g.nodes) {
    nodes.push_back({node.view.row, node.view.col, node.y, node.x});
  }
  nlohmann::json edges = nlohmann::json::array();
  for (const GraphEdge& e : g.edges) {
    edges.push_back({e.a, e.b, e.weight});
  }
  return nlohmann::json{
      {"label", g.label}, {"nodes", nodes}, {"edges", edges}}
      .dump();
}

}  // namespace lfgc
