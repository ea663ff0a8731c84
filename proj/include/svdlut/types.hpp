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

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "svdlut/error.hpp"

namespace svdlut {

inline constexpr int kNumChannels = 3;
inline constexpr int kNumPairs = 3;

// Axis pairs of the 2D LUT planes, in storage order.
enum class LutPair : int { kRG = 0, kRB = 1, kGB = 2 };

// Axis pairs of the 2D bilateral grid planes, in storage order. "C" is the
// intensity axis.
enum class GridPair : int { kXY = 0, kXC = 1, kYC = 2 };

// Planar RGB raster. Samples are channel-major then row-major:
// data[(c * height + y) * width + x].
class Image {
 public:
  // Zero-filled image. Throws kDimensionMismatch unless width, height >= 1.
  Image(int width, int height);
  // Takes ownership of `data`; throws if the length or any sample is bad.
  Image(int width, int height, std::vector<float> data);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t pixel_count() const noexcept {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }

  std::span<const float> data() const noexcept { return data_; }
  std::span<float> data() noexcept { return data_; }

  std::span<const float> channel(int c) const noexcept {
    return std::span<const float>(data_).subspan(c * pixel_count(), pixel_count());
  }
  std::span<float> channel(int c) noexcept {
    return std::span<float>(data_).subspan(c * pixel_count(), pixel_count());
  }

  float at(int c, int x, int y) const noexcept {
    return data_[(static_cast<std::size_t>(c) * height_ + y) * width_ + x];
  }
  float& at(int c, int x, int y) noexcept {
    return data_[(static_cast<std::size_t>(c) * height_ + y) * width_ + x];
  }

 private:
  int width_;
  int height_;
  std::vector<float> data_;
};

// Three d^3 cubes, one per output channel, indexed [c][i_r][i_g][i_b].
class Lut3D {
 public:
  explicit Lut3D(int dim);
  Lut3D(int dim, std::vector<float> tables);

  // Entry of channel c is the c-th input coordinate of the vertex.
  static Lut3D identity(int dim);

  int dim() const noexcept { return dim_; }
  std::size_t cube_size() const noexcept {
    return static_cast<std::size_t>(dim_) * dim_ * dim_;
  }
  std::span<const float> cube(int c) const noexcept {
    return std::span<const float>(tables_).subspan(c * cube_size(), cube_size());
  }
  std::span<float> cube(int c) noexcept {
    return std::span<float>(tables_).subspan(c * cube_size(), cube_size());
  }
  std::span<const float> data() const noexcept { return tables_; }

 private:
  int dim_;
  std::vector<float> tables_;
};

// Nine d x d planes indexed [c][pair][i][j]. For pair (a, b), row i follows
// the a axis and column j the b axis.
class Lut2DSet {
 public:
  explicit Lut2DSet(int dim);
  Lut2DSet(int dim, std::vector<float> planes);

  // Red passes through t^r_rg, green through t^g_rg, blue through t^b_rb.
  // Use with identity_lut_weights().
  static Lut2DSet identity(int dim);

  int dim() const noexcept { return dim_; }
  std::size_t plane_size() const noexcept {
    return static_cast<std::size_t>(dim_) * dim_;
  }
  std::span<const float> plane(int c, LutPair pair) const noexcept {
    return std::span<const float>(planes_).subspan(offset(c, pair), plane_size());
  }
  std::span<float> plane(int c, LutPair pair) noexcept {
    return std::span<float>(planes_).subspan(offset(c, pair), plane_size());
  }
  std::span<const float> data() const noexcept { return planes_; }

 private:
  std::size_t offset(int c, LutPair pair) const noexcept {
    return (static_cast<std::size_t>(c) * kNumPairs + static_cast<int>(pair)) *
           plane_size();
  }

  int dim_;
  std::vector<float> planes_;
};

// Weights of the three planes feeding one output, plus a bias.
struct PlaneWeights {
  std::array<float, kNumPairs> w{};
  float bias = 0.0f;
};

// One PlaneWeights per output channel (r, g, b).
using LutWeights = std::array<PlaneWeights, kNumChannels>;

// One PlaneWeights per grid.
using GridWeights = std::vector<PlaneWeights>;

LutWeights identity_lut_weights();

// K grids, each three d_s x d_s planes indexed [k][pair][i][j]; pair order
// (xy, xc, yc).
class GridSet {
 public:
  GridSet(int count, int dim);
  GridSet(int count, int dim, std::vector<float> planes);

  int count() const noexcept { return count_; }
  int dim() const noexcept { return dim_; }
  std::size_t plane_size() const noexcept {
    return static_cast<std::size_t>(dim_) * dim_;
  }
  std::span<const float> plane(int k, GridPair pair) const noexcept {
    return std::span<const float>(planes_).subspan(offset(k, pair), plane_size());
  }
  std::span<float> plane(int k, GridPair pair) noexcept {
    return std::span<float>(planes_).subspan(offset(k, pair), plane_size());
  }
  std::span<const float> data() const noexcept { return planes_; }

 private:
  std::size_t offset(int k, GridPair pair) const noexcept {
    return (static_cast<std::size_t>(k) * kNumPairs + static_cast<int>(pair)) *
           plane_size();
  }

  int count_;
  int dim_;
  std::vector<float> planes_;
};

// Factor form of a dim x dim matrix: U (dim x rank, row-major), S (rank),
// Vt (rank x dim, row-major).
struct SvdFactors {
  int dim = 0;
  int rank = 0;
  std::vector<float> u;
  std::vector<float> s;
  std::vector<float> vt;
};

// Factor form of all nine 2D LUT planes, same [c][pair] order as Lut2DSet.
struct SvdLut {
  int dim = 0;
  int rank = 0;
  std::array<SvdFactors, kNumChannels * kNumPairs> planes;

  SvdFactors& plane(int c, LutPair pair) {
    return planes[c * kNumPairs + static_cast<int>(pair)];
  }
  const SvdFactors& plane(int c, LutPair pair) const {
    return planes[c * kNumPairs + static_cast<int>(pair)];
  }
};

// Each returns the first violated invariant, or nullopt.
std::optional<Error> validate(const Image& image);
std::optional<Error> validate(const Lut3D& lut);
std::optional<Error> validate(const Lut2DSet& luts);
std::optional<Error> validate(const LutWeights& weights);
std::optional<Error> validate(const GridSet& grids);
std::optional<Error> validate(const GridWeights& weights);
std::optional<Error> validate(const SvdFactors& factors);
std::optional<Error> validate(const SvdLut& lut);

}  // namespace svdlut
