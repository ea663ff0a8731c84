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

#include <cstdint>
#include <span>
#include <vector>

#include "svdlut/types.hpp"

namespace svdlut::analysis {

enum class LutMode { k1D, k2D, k3D };

// Percentage of table vertices touched by the interpolation stencils of all
// pixels: 2 corners per axis (1D), 4 per plane (2D) or 8 per cube (3D), over
// 3*d, 3*d^2 or d^3 vertices respectively. Every corner of a pixel's cell
// counts, even when its interpolation weight is zero.
double utilization_rate(const Image& image, int dim, LutMode mode);

// Per-vertex stencil hit counts of a d^3 cube.
class OccurrenceMap {
 public:
  explicit OccurrenceMap(int dim);

  void ingest(const Image& image);
  // Maps over the same dim add element-wise.
  void merge(const OccurrenceMap& other);

  int dim() const noexcept { return dim_; }
  std::span<const std::uint64_t> cube() const noexcept { return cube_; }
  std::uint64_t at(int ir, int ig, int ib) const noexcept {
    return cube_[(static_cast<std::size_t>(ir) * dim_ + ig) * dim_ + ib];
  }
  std::uint64_t total() const noexcept;

  // d x d sums over the omitted axis, indexed [first][second] of the pair.
  std::vector<std::uint64_t> projection(LutPair pair) const;

 private:
  int dim_;
  std::vector<std::uint64_t> cube_;
};

OccurrenceMap occurrence_stats(std::span<const Image> images, int dim);

// 16-bit binary PGM of a d x d projection, linearly rescaled so the largest
// count maps to 65535.
std::vector<std::uint8_t> heatmap_pgm(std::span<const std::uint64_t> projection, int dim);

// 10 log10(1 / MSE) over all samples, peak 1.0. Identical images give +inf.
double psnr(const Image& a, const Image& b);

// Mean CIE76 distance: sRGB decoding, D65 XYZ, then CIELAB.
double delta_e_ab(const Image& a, const Image& b);

}  // namespace svdlut::analysis
