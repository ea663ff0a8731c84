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
#include <string>
#include <vector>

#include "svdlut/types.hpp"

namespace svdlut::svd {

inline constexpr int kMaxSweeps = 60;
inline constexpr double kConvergenceTolerance = 1e-12;

// Full SVD of a dim x dim row-major matrix by cyclic one-sided Jacobi.
//
// The factorization is computed in double precision and stored as float.
// Singular values come out non-negative and non-increasing (stable order on
// ties); U is completed to an orthonormal basis when the matrix is rank
// deficient, and each U column has its largest-magnitude entry non-negative.
// Throws kNoConvergence after kMaxSweeps sweeps.
SvdFactors jacobi_svd(std::span<const float> matrix, int dim);

// Keeps the leading `rank` singular triples. Throws kBadRank unless
// 1 <= rank <= f.rank.
SvdFactors truncate(const SvdFactors& f, int rank);

// U * diag(S) * Vt as a dim x dim row-major matrix.
std::vector<float> reconstruct(const SvdFactors& f);

double frobenius_distance(std::span<const float> a, std::span<const float> b);

SvdLut decompose_luts(const Lut2DSet& luts);
SvdLut truncate_luts(const SvdLut& lut, int rank);
Lut2DSet reconstruct_luts(const SvdLut& lut);

// Values stored for one plane in factor form.
constexpr std::size_t factored_param_count(int dim, int rank) {
  return 2 * static_cast<std::size_t>(dim) * rank + rank;
}

struct RankSweepRow {
  int rank = 0;
  double psnr_db = 0.0;  // +inf when the output is identical to full rank
  std::size_t params = 0;
};

// For each rank: truncates all nine planes, applies the 2D LUT transform with
// `weights` to every image and reports the mean PSNR against the full-rank
// reconstruction's output, with the factored parameter count of all planes.
std::vector<RankSweepRow> rank_sweep(const Lut2DSet& luts, const LutWeights& weights,
                                     std::span<const Image> images,
                                     std::span<const int> ranks);

// Experiment-only counterpart on bilateral grids: PSNR of the sliced feature
// maps against full-rank grids. Grids are never factored in the model path.
std::vector<RankSweepRow> grid_rank_sweep(const GridSet& grids,
                                          const GridWeights& weights,
                                          std::span<const Image> images,
                                          std::span<const int> ranks);

// "rank,psnr_db,params" header plus one row per rank; infinite PSNR is "inf".
std::string rank_sweep_csv(std::span<const RankSweepRow> rows);

}  // namespace svdlut::svd
