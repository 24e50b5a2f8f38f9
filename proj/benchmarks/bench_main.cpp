// Copyright 2026 The lfgc Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "lfgc/codec.hpp"
#include "lfgc/entropy.hpp"
#include "lfgc/graph.hpp"
#include "lfgc/metrics.hpp"
#include "lfgc/projection.hpp"
#include "lfgc/slic.hpp"
#include "lfgc/synth.hpp"

namespace {

using namespace lfgc;

ViewImage noise_view(int side, uint64_t seed) {
  ViewImage img(side, side);
  std::mt19937_64 rng(seed);
  for (uint8_t& p : img.pixels()) p = static_cast<uint8_t>(rng() % 256);
  return img;
}

SuperRayGraph random_connected_graph(int n, uint64_t seed) {
  std::mt19937_64 rng(seed);
  SuperRayGraph g;
  for (int i = 0; i < n; ++i) {
    g.nodes.push_back({{1, 1}, 0, i});
    g.signal.push_back(static_cast<double>(rng() % 256));
  }
  for (int i = 1; i < n; ++i) {
    std::uniform_int_distribution<int> prev(0, i - 1);
    const int j = prev(rng);
    g.edges.push_back({static_cast<int32_t>(std::min(i, j)),
                       static_cast<int32_t>(std::max(i, j)), 1.0});
  }
  return g;
}

RenderedLightField bench_scene(int rows, int cols, int side) {
  SceneSpec spec;
  spec.grid_rows = rows;
  spec.grid_cols = cols;
  spec.view_height = side;
  spec.view_width = side;
  spec.background_intensity = 80;
  spec.background_texture = {TextureKind::kGradient, 1.0, 0.5, 0.0, 0};
  Layer l;
  l.shape = ShapeKind::kRect;
  l.y = side / 4;
  l.x = side / 4;
  l.h = side / 4;
  l.w = side / 4;
  l.disparity = 1.0;
  l.intensity = 190;
  l.texture = {TextureKind::kNoise, 0.0, 0.0, 10.0, 3};
  spec.layers.push_back(l);
  return render_lf(spec);
}

void BM_Ssim(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const ViewImage a = noise_view(side, 1);
  const ViewImage b = noise_view(side, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ssim(a, b));
  }
  state.SetItemsProcessed(state.iterations() * side * side);
}
BENCHMARK(BM_Ssim)->Arg(64)->Arg(128)->Arg(256);

void BM_Slic(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const ViewImage img = noise_view(side, 3);
  SlicParams params;
  params.n_segments = side;
  for (auto _ : state) {
    benchmark::DoNotOptimize(slic_segment(img, params));
  }
  state.SetItemsProcessed(state.iterations() * side * side);
}
BENCHMARK(BM_Slic)->Arg(64)->Arg(128)->Arg(256);

void BM_SpectralBasis(benchmark::State& state) {
  const SuperRayGraph g =
      random_connected_graph(static_cast<int>(state.range(0)), 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_basis(g));
  }
}
BENCHMARK(BM_SpectralBasis)->Arg(100)->Arg(300)->Arg(600)->Arg(1000)
    ->Unit(benchmark::kMillisecond);

void BM_Gft(benchmark::State& state) {
  const SuperRayGraph g =
      random_connected_graph(static_cast<int>(state.range(0)), 5);
  const SpectralBasis basis = compute_basis(g);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gft(basis, g.signal));
  }
}
BENCHMARK(BM_Gft)->Arg(100)->Arg(600)->Arg(1000);

void BM_RangeCoder(benchmark::State& state) {
  std::mt19937_64 rng(6);
  std::vector<int> bits(1 << 16);
  for (int& b : bits) b = rng() % 4 == 0;
  for (auto _ : state) {
    std::vector<uint8_t> bytes;
    RangeEncoder enc(bytes);
    BitModel model;
    for (int b : bits) enc.encode_bit(model, b);
    enc.finish();
    benchmark::DoNotOptimize(bytes);
  }
  state.SetItemsProcessed(state.iterations() * bits.size());
}
BENCHMARK(BM_RangeCoder);

void BM_ProjectLabels(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const RenderedLightField r = bench_scene(1, 2, side);
  const SuperRayTable table =
      median_disparity_per_label(r.labels[0], r.disparity[0]);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        project_labels(r.labels[0], table, {1, 1}, {1, 2}));
  }
  state.SetItemsProcessed(state.iterations() * side * side);
}
BENCHMARK(BM_ProjectLabels)->Arg(128)->Arg(512);

void BM_EncodeLightfield(benchmark::State& state) {
  const RenderedLightField r = bench_scene(3, 3, 32);
  std::map<ViewIndex, DisparityMap> disparity;
  for (int row = 1; row <= 3; ++row) {
    for (int col = 1; col <= 3; ++col) {
      disparity[{row, col}] =
          r.disparity[static_cast<size_t>(row - 1) * 3 + (col - 1)];
    }
  }
  EncodeParams params;
  params.slic.n_segments = 16;
  params.max_nodes = 256;
  for (auto _ : state) {
    benchmark::DoNotOptimize(encode_lightfield(r.lf, disparity, params));
  }
  state.SetItemsProcessed(state.iterations() * 9 * 32 * 32);
}
BENCHMARK(BM_EncodeLightfield)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
