// Copyright 2026 The svdlut Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "svdlut/types.hpp"

namespace svdlut {

// K full-resolution feature planes produced by grid slicing, laid out
// [k][y][x]. Only the naive pipeline materializes one.
struct SpatialFeatureMap {
  int count = 0;
  int width = 0;
  int height = 0;
  std::vector<float> data;

  std::size_t plane_size() const noexcept {
    return static_cast<std::size_t>(width) * height;
  }
  std::span<const float> channel(int k) const noexcept {
    return std::span<const float>(data).subspan(k * plane_size(), plane_size());
  }
  std::span<float> channel(int k) noexcept {
    return std::span<float>(data).subspan(k * plane_size(), plane_size());
  }
};

// Every transform below splits the output into `threads` horizontal bands.
// Results are bit-identical for any thread count.

// Trilinear 3D LUT transform, one cube per output channel.
Image apply_lut3d(const Image& image, const Lut3D& lut, unsigned threads = 1);

// Decomposed transform: each output channel is a weighted sum of three
// bilinear lookups, queried at (R,G), (R,B) and (G,B), plus a bias.
Image apply_lut2d(const Image& image, const Lut2DSet& luts,
                  const LutWeights& weights, unsigned threads = 1);

// 2D bilateral-grid slicing. Grid k is queried at (x', y'), (x', C) and
// (y', C), where x' = x / (W - 1), y' = y / (H - 1) and C is input channel
// k mod 3. Throws kDegenerateImage for W < 2 or H < 2.
SpatialFeatureMap slice_grid2d(const Image& image, const GridSet& grids,
                               const GridWeights& weights, unsigned threads = 1);

// Fusion stage of the naive pipeline: adds feature channels c, c+3, c+6, ...
// to output channel c, in place.
Image fuse_features(Image transformed, const SpatialFeatureMap& features,
                    unsigned threads = 1);

// Materializing reference: slice_grid2d, then apply_lut2d, then
// fuse_features. Requires grids.count() % 3 == 0.
Image naive_enhance(const Image& image, const Lut2DSet& luts,
                    const LutWeights& lut_weights, const GridSet& grids,
                    const GridWeights& grid_weights, unsigned threads = 1);

// Single-pass equivalent of naive_enhance. Per pixel, the LUT and grid
// brackets of the three input values are computed once and shared by all
// lookups; nothing but the output raster is allocated.
Image fused_enhance(const Image& image, const Lut2DSet& luts,
                    const LutWeights& lut_weights, const GridSet& grids,
                    const GridWeights& grid_weights, unsigned threads = 1);

}  // namespace svdlut
