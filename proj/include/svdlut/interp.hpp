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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>

#include "svdlut/error.hpp"

namespace svdlut::interp {

// Cell of a uniform vertex lattice over [0, 1] that contains a query, and the
// fractional position inside it. left + 1 always names a valid vertex.
struct Bracket {
  int left = 0;
  float delta = 0.0f;
};

// Unchecked variant for hot loops; dim must be >= 2.
inline Bracket bracket_unchecked(float p, int dim) noexcept {
  // Out-of-range (and NaN) queries are clamped onto the table.
  p = (p >= 0.0f) ? std::min(p, 1.0f) : 0.0f;
  // Exact in double, so delta is rounded once.
  const double scaled = static_cast<double>(p) * (dim - 1);
  int left = static_cast<int>(scaled);  // floor, scaled >= 0
  left = std::min(left, dim - 2);
  return {left, static_cast<float>(scaled - left)};
}

inline Bracket bracket(float p, int dim) {
  if (dim < 2) {
    throw Error(ErrorCode::kBadVertexCount,
                "bracketing needs at least 2 vertices, got " + std::to_string(dim));
  }
  return bracket_unchecked(p, dim);
}

// Corner offset and weights of one bilinear lookup; reusable across planes of
// the same size queried at the same point.
struct Stencil {
  std::size_t offset = 0;
  float w00 = 0.0f;
  float w10 = 0.0f;
  float w01 = 0.0f;
  float w11 = 0.0f;
};

inline Stencil stencil(int dim, Bracket a, Bracket b) noexcept {
  return {static_cast<std::size_t>(a.left) * dim + b.left,
          (1.0f - a.delta) * (1.0f - b.delta), a.delta * (1.0f - b.delta),
          (1.0f - a.delta) * b.delta, a.delta * b.delta};
}

inline float apply(std::span<const float> plane, int dim, const Stencil& s) noexcept {
  const float* v = plane.data() + s.offset;
  return s.w00 * v[0] + s.w10 * v[dim] + s.w01 * v[1] + s.w11 * v[dim + 1];
}

// plane is dim x dim row-major; row follows the first axis.
inline float bilinear(std::span<const float> plane, int dim, Bracket a,
                      Bracket b) noexcept {
  return apply(plane, dim, stencil(dim, a, b));
}

inline float bilinear_sample(std::span<const float> plane, int dim, float p_a,
                             float p_b) {
  const Bracket a = bracket(p_a, dim);
  return bilinear(plane, dim, a, bracket_unchecked(p_b, dim));
}

// cube is dim^3, indexed [i_r][i_g][i_b].
inline float trilinear(std::span<const float> cube, int dim, Bracket r,
                       Bracket g, Bracket b) noexcept {
  const std::size_t sr = static_cast<std::size_t>(dim) * dim;
  const std::size_t sg = dim;
  const std::size_t base = r.left * sr + g.left * sg + b.left;
  const float* v = cube.data() + base;

  const float c00 = v[0] * (1.0f - b.delta) + v[1] * b.delta;
  const float c01 = v[sg] * (1.0f - b.delta) + v[sg + 1] * b.delta;
  const float c10 = v[sr] * (1.0f - b.delta) + v[sr + 1] * b.delta;
  const float c11 = v[sr + sg] * (1.0f - b.delta) + v[sr + sg + 1] * b.delta;

  const float c0 = c00 * (1.0f - g.delta) + c01 * g.delta;
  const float c1 = c10 * (1.0f - g.delta) + c11 * g.delta;
  return c0 * (1.0f - r.delta) + c1 * r.delta;
}

inline float trilinear_sample(std::span<const float> cube, int dim, float p_r,
                              float p_g, float p_b) {
  const Bracket r = bracket(p_r, dim);
  return trilinear(cube, dim, r, bracket_unchecked(p_g, dim),
                   bracket_unchecked(p_b, dim));
}

}  // namespace svdlut::interp
