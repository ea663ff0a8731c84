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

#include "svdlut/transform.hpp"

#include <array>
#include <string>
#include <vector>

#include "parallel.hpp"
#include "svdlut/interp.hpp"

namespace svdlut {
namespace {

using interp::Bracket;
using interp::bilinear;
using interp::bracket_unchecked;
using interp::Stencil;
using interp::apply;
using interp::stencil;

void check_image(const Image& image) {
  if (image.data().size() != kNumChannels * image.pixel_count()) {
    throw Error(ErrorCode::kDimensionMismatch, "image buffer does not match its size");
  }
}

void check_slicing_inputs(const Image& image, const GridSet& grids,
                          const GridWeights& weights) {
  check_image(image);
  if (image.width() < 2 || image.height() < 2) {
    throw Error(ErrorCode::kDegenerateImage,
                "slicing needs an image of at least 2x2, got " +
                    std::to_string(image.width()) + "x" +
                    std::to_string(image.height()));
  }
  if (static_cast<int>(weights.size()) != grids.count()) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::to_string(weights.size()) + " grid weights for " +
                    std::to_string(grids.count()) + " grids");
  }
}

void check_fused_inputs(const Image& image, const GridSet& grids,
                        const GridWeights& weights) {
  if (grids.count() % kNumChannels != 0) {
    throw Error(ErrorCode::kBadGridCount,
                "grid count must be a multiple of 3, got " +
                    std::to_string(grids.count()));
  }
  check_slicing_inputs(image, grids, weights);
}

// Weighted sum of the three 2D LUT lookups for output channel c.
inline float lut2d_channel(const Lut2DSet& luts, const PlaneWeights& pw, int c,
                           Bracket r, Bracket g, Bracket b) {
  const int dim = luts.dim();
  return pw.w[0] * bilinear(luts.plane(c, LutPair::kRG), dim, r, g) +
         pw.w[1] * bilinear(luts.plane(c, LutPair::kRB), dim, r, b) +
         pw.w[2] * bilinear(luts.plane(c, LutPair::kGB), dim, g, b) + pw.bias;
}

// Weighted sum of the three grid lookups for grid k.
inline float slice_grid(const GridSet& grids, const PlaneWeights& pw, int k,
                        Bracket x, Bracket y, Bracket intensity) {
  const int dim = grids.dim();
  return pw.w[0] * bilinear(grids.plane(k, GridPair::kXY), dim, x, y) +
         pw.w[1] * bilinear(grids.plane(k, GridPair::kXC), dim, x, intensity) +
         pw.w[2] * bilinear(grids.plane(k, GridPair::kYC), dim, y, intensity) +
         pw.bias;
}

inline float normalized_coord(int pos, int extent) {
  return static_cast<float>(pos) / static_cast<float>(extent - 1);
}

}  // namespace

Image apply_lut3d(const Image& image, const Lut3D& lut, unsigned threads) {
  check_image(image);
  Image out(image.width(), image.height());
  const int dim = lut.dim();
  const std::size_t width = image.width();
  const auto in_r = image.channel(0);
  const auto in_g = image.channel(1);
  const auto in_b = image.channel(2);

  detail::for_each_band(image.height(), threads, [&](int y0, int y1) {
    auto out_r = out.channel(0);
    auto out_g = out.channel(1);
    auto out_b = out.channel(2);
    for (std::size_t i = y0 * width; i < y1 * width; ++i) {
      const Bracket r = bracket_unchecked(in_r[i], dim);
      const Bracket g = bracket_unchecked(in_g[i], dim);
      const Bracket b = bracket_unchecked(in_b[i], dim);
      out_r[i] = interp::trilinear(lut.cube(0), dim, r, g, b);
      out_g[i] = interp::trilinear(lut.cube(1), dim, r, g, b);
      out_b[i] = interp::trilinear(lut.cube(2), dim, r, g, b);
    }
  });
  return out;
}

Image apply_lut2d(const Image& image, const Lut2DSet& luts,
                  const LutWeights& weights, unsigned threads) {
  check_image(image);
  Image out(image.width(), image.height());
  const int dim = luts.dim();
  const std::size_t width = image.width();
  const auto in_r = image.channel(0);
  const auto in_g = image.channel(1);
  const auto in_b = image.channel(2);

  detail::for_each_band(image.height(), threads, [&](int y0, int y1) {
    for (std::size_t i = y0 * width; i < y1 * width; ++i) {
      const Bracket r = bracket_unchecked(in_r[i], dim);
      const Bracket g = bracket_unchecked(in_g[i], dim);
      const Bracket b = bracket_unchecked(in_b[i], dim);
      for (int c = 0; c < kNumChannels; ++c) {
        out.channel(c)[i] = lut2d_channel(luts, weights[c], c, r, g, b);
      }
    }
  });
  return out;
}

SpatialFeatureMap slice_grid2d(const Image& image, const GridSet& grids,
                               const GridWeights& weights, unsigned threads) {
  check_slicing_inputs(image, grids, weights);
  const int width = image.width();
  const int height = image.height();
  const int dim = grids.dim();

  SpatialFeatureMap features;
  features.count = grids.count();
  features.width = width;
  features.height = height;
  features.data.assign(grids.count() * features.plane_size(), 0.0f);

  detail::for_each_band(height, threads, [&](int y0, int y1) {
    for (int k = 0; k < grids.count(); ++k) {
      const auto intensity_plane = image.channel(k % kNumChannels);
      auto out = features.channel(k);
      for (int y = y0; y < y1; ++y) {
        const Bracket by = bracket_unchecked(normalized_coord(y, height), dim);
        for (int x = 0; x < width; ++x) {
          const std::size_t i = static_cast<std::size_t>(y) * width + x;
          const Bracket bx = bracket_unchecked(normalized_coord(x, width), dim);
          const Bracket bc = bracket_unchecked(intensity_plane[i], dim);
          out[i] = slice_grid(grids, weights[k], k, bx, by, bc);
        }
      }
    }
  });
  return features;
}

Image fuse_features(Image transformed, const SpatialFeatureMap& features,
                    unsigned threads) {
  if (features.width != transformed.width() ||
      features.height != transformed.height() ||
      features.count % kNumChannels != 0) {
    throw Error(ErrorCode::kDimensionMismatch,
                "feature map does not match the transformed image");
  }
  const std::size_t width = transformed.width();
  detail::for_each_band(transformed.height(), threads, [&](int y0, int y1) {
    for (int c = 0; c < kNumChannels; ++c) {
      auto out = transformed.channel(c);
      for (int k = c; k < features.count; k += kNumChannels) {
        const auto feat = features.channel(k);
        for (std::size_t i = y0 * width; i < y1 * width; ++i) out[i] += feat[i];
      }
    }
  });
  return transformed;
}

Image naive_enhance(const Image& image, const Lut2DSet& luts,
                    const LutWeights& lut_weights, const GridSet& grids,
                    const GridWeights& grid_weights, unsigned threads) {
  check_fused_inputs(image, grids, grid_weights);
  const SpatialFeatureMap features = slice_grid2d(image, grids, grid_weights, threads);
  return fuse_features(apply_lut2d(image, luts, lut_weights, threads), features,
                       threads);
}

Image fused_enhance(const Image& image, const Lut2DSet& luts,
                    const LutWeights& lut_weights, const GridSet& grids,
                    const GridWeights& grid_weights, unsigned threads) {
  check_fused_inputs(image, grids, grid_weights);
  const int width = image.width();
  const int height = image.height();
  const int lut_dim = luts.dim();
  const int grid_dim = grids.dim();
  const int groups = grids.count() / kNumChannels;

  Image out(width, height);
  const auto in_r = image.channel(0);
  const auto in_g = image.channel(1);
  const auto in_b = image.channel(2);

  detail::for_each_band(height, threads, [&](int y0, int y1) {
    auto out_r = out.channel(0);
    auto out_g = out.channel(1);
    auto out_b = out.channel(2);
    // Table lookups hoisted so stores to the output cannot force reloads.
    std::span<const float> lut_planes[kNumChannels][kNumPairs];
    for (int c = 0; c < kNumChannels; ++c) {
      for (int p = 0; p < kNumPairs; ++p) lut_planes[c][p] = luts.plane(c, static_cast<LutPair>(p));
    }
    std::vector<std::array<std::span<const float>, kNumPairs>> grid_planes(grids.count());
    for (int k = 0; k < grids.count(); ++k) {
      for (int p = 0; p < kNumPairs; ++p) grid_planes[k][p] = grids.plane(k, static_cast<GridPair>(p));
    }
    const LutWeights lw_local = lut_weights;
    const GridWeights gw_local = grid_weights;
    // Column brackets are the same on every row.
    std::vector<Bracket> columns(width);
    for (int x = 0; x < width; ++x) {
      columns[x] = bracket_unchecked(normalized_coord(x, width), grid_dim);
    }
    for (int y = y0; y < y1; ++y) {
      const Bracket by = bracket_unchecked(normalized_coord(y, height), grid_dim);
      for (int x = 0; x < width; ++x) {
        const std::size_t i = static_cast<std::size_t>(y) * width + x;
        const float r = in_r[i];
        const float g = in_g[i];
        const float b = in_b[i];
        const Bracket lr = bracket_unchecked(r, lut_dim);
        const Bracket lg = bracket_unchecked(g, lut_dim);
        const Bracket lb = bracket_unchecked(b, lut_dim);
        const Bracket bx = columns[x];
        const Stencil lut_st[kNumPairs] = {stencil(lut_dim, lr, lg),
                                           stencil(lut_dim, lr, lb),
                                           stencil(lut_dim, lg, lb)};
        const Stencil xy = stencil(grid_dim, bx, by);

        float acc[kNumChannels];
        for (int c = 0; c < kNumChannels; ++c) {
          const PlaneWeights& lw = lw_local[c];
          acc[c] = lw.w[0] * apply(lut_planes[c][0], lut_dim, lut_st[0]) +
                   lw.w[1] * apply(lut_planes[c][1], lut_dim, lut_st[1]) +
                   lw.w[2] * apply(lut_planes[c][2], lut_dim, lut_st[2]) + lw.bias;
          const Bracket intensity = bracket_unchecked(c == 0 ? r : (c == 1 ? g : b), grid_dim);
          const Stencil xc = stencil(grid_dim, bx, intensity);
          const Stencil yc = stencil(grid_dim, by, intensity);
          for (int group = 0; group < groups; ++group) {
            const int k = c + kNumChannels * group;
            const PlaneWeights& gw = gw_local[k];
            const auto& planes = grid_planes[k];
            acc[c] += gw.w[0] * apply(planes[0], grid_dim, xy) +
                      gw.w[1] * apply(planes[1], grid_dim, xc) +
                      gw.w[2] * apply(planes[2], grid_dim, yc) + gw.bias;
          }
        }
        out_r[i] = acc[0];
        out_g[i] = acc[1];
        out_b[i] = acc[2];
      }
    }
  });
  return out;
}

}  // namespace svdlut
