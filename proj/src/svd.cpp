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

#include "svdlut/svd.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include "svdlut/analysis.hpp"
#include "svdlut/transform.hpp"

namespace svdlut::svd {
namespace {

// Column-major square matrix in double precision.
class Columns {
 public:
  explicit Columns(int dim) : dim_(dim), data_(static_cast<std::size_t>(dim) * dim) {}

  double* col(int j) { return data_.data() + static_cast<std::size_t>(j) * dim_; }
  const double* col(int j) const {
    return data_.data() + static_cast<std::size_t>(j) * dim_;
  }

 private:
  int dim_;
  std::vector<double> data_;
};

double dot(const double* a, const double* b, int n) {
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

void rotate(double* p, double* q, int n, double c, double s) {
  for (int i = 0; i < n; ++i) {
    const double vp = p[i];
    const double vq = q[i];
    p[i] = c * vp - s * vq;
    q[i] = s * vp + c * vq;
  }
}

// Unit vector orthogonal to every column of basis, picked from the
// canonical axes as the one with the largest residual.
std::vector<double> orthogonal_complement_vector(const std::vector<std::vector<double>>& basis,
                                                 int dim) {
  std::vector<double> best;
  double best_norm = -1.0;
  for (int axis = 0; axis < dim; ++axis) {
    std::vector<double> v(dim, 0.0);
    v[axis] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) {
        const double proj = dot(v.data(), b.data(), dim);
        for (int i = 0; i < dim; ++i) v[i] -= proj * b[i];
      }
    }
    const double norm = std::sqrt(dot(v.data(), v.data(), dim));
    if (norm > best_norm) {
      best_norm = norm;
      best = std::move(v);
    }
  }
  for (double& x : best) x /= best_norm;
  return best;
}

void check_rank(int rank, int max_rank) {
  if (rank < 1 || rank > max_rank) {
    throw Error(ErrorCode::kBadRank, "rank " + std::to_string(rank) +
                                         " outside [1, " + std::to_string(max_rank) + "]");
  }
}

}  // namespace

SvdFactors jacobi_svd(std::span<const float> matrix, int dim) {
  if (dim < 1) throw Error(ErrorCode::kBadHyperparameter, "SVD of an empty matrix");
  if (matrix.size() != static_cast<std::size_t>(dim) * dim) {
    throw Error(ErrorCode::kDimensionMismatch, "matrix is not dim x dim");
  }
  if (!std::all_of(matrix.begin(), matrix.end(), [](float v) { return std::isfinite(v); })) {
    throw Error(ErrorCode::kNonFiniteValue, "SVD input has non-finite entries");
  }

  Columns work(dim);
  Columns v(dim);
  double frob2 = 0.0;
  for (int j = 0; j < dim; ++j) {
    for (int i = 0; i < dim; ++i) {
      const double x = matrix[static_cast<std::size_t>(i) * dim + j];
      work.col(j)[i] = x;
      frob2 += x * x;
    }
    v.col(j)[j] = 1.0;
  }
  const double null_threshold = kConvergenceTolerance * std::sqrt(frob2);

  // Orthogonalize column pairs until every pair is orthogonal relative to the
  // product of its norms.
  bool converged = false;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    converged = true;
    for (int p = 0; p + 1 < dim; ++p) {
      for (int q = p + 1; q < dim; ++q) {
        double* wp = work.col(p);
        double* wq = work.col(q);
        const double alpha = dot(wp, wp, dim);
        const double beta = dot(wq, wq, dim);
        const double gamma = dot(wp, wq, dim);
        if (std::sqrt(alpha) <= null_threshold || std::sqrt(beta) <= null_threshold) continue;
        if (std::abs(gamma) <= kConvergenceTolerance * std::sqrt(alpha * beta)) continue;
        converged = false;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        rotate(wp, wq, dim, c, s);
        rotate(v.col(p), v.col(q), dim, c, s);
      }
    }
  }
  if (!converged) {
    throw Error(ErrorCode::kNoConvergence,
                "Jacobi SVD did not converge in " + std::to_string(kMaxSweeps) + " sweeps");
  }

  std::vector<double> sigma(dim);
  for (int j = 0; j < dim; ++j) sigma[j] = std::sqrt(dot(work.col(j), work.col(j), dim));
  std::vector<int> order(dim);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return sigma[a] > sigma[b]; });

  std::vector<std::vector<double>> u_cols;
  std::vector<std::vector<double>> v_cols;
  std::vector<double> s_sorted;
  u_cols.reserve(dim);
  for (int j : order) {
    std::vector<double> vj(v.col(j), v.col(j) + dim);
    if (sigma[j] > null_threshold) {
      std::vector<double> uj(work.col(j), work.col(j) + dim);
      for (double& x : uj) x /= sigma[j];
      u_cols.push_back(std::move(uj));
      s_sorted.push_back(sigma[j]);
    } else {
      u_cols.push_back(orthogonal_complement_vector(u_cols, dim));
      s_sorted.push_back(0.0);
    }
    v_cols.push_back(std::move(vj));
  }

  SvdFactors f;
  f.dim = dim;
  f.rank = dim;
  f.u.resize(static_cast<std::size_t>(dim) * dim);
  f.s.resize(dim);
  f.vt.resize(static_cast<std::size_t>(dim) * dim);
  for (int j = 0; j < dim; ++j) {
    auto& uj = u_cols[j];
    auto& vj = v_cols[j];
    // Largest-magnitude entry of each U column is made non-negative.
    const auto peak = std::max_element(uj.begin(), uj.end(), [](double a, double b) {
      return std::abs(a) < std::abs(b);
    });
    if (*peak < 0.0) {
      for (double& x : uj) x = -x;
      for (double& x : vj) x = -x;
    }
    for (int i = 0; i < dim; ++i) {
      f.u[static_cast<std::size_t>(i) * dim + j] = static_cast<float>(uj[i]);
      f.vt[static_cast<std::size_t>(j) * dim + i] = static_cast<float>(vj[i]);
    }
    f.s[j] = static_cast<float>(s_sorted[j]);
  }
  return f;
}

SvdFactors truncate(const SvdFactors& f, int rank) {
  check_rank(rank, f.rank);
  SvdFactors out;
  out.dim = f.dim;
  out.rank = rank;
  out.u.resize(static_cast<std::size_t>(f.dim) * rank);
  for (int i = 0; i < f.dim; ++i) {
    std::copy_n(f.u.begin() + static_cast<std::ptrdiff_t>(i) * f.rank, rank,
                out.u.begin() + static_cast<std::ptrdiff_t>(i) * rank);
  }
  out.s.assign(f.s.begin(), f.s.begin() + rank);
  out.vt.assign(f.vt.begin(), f.vt.begin() + static_cast<std::ptrdiff_t>(rank) * f.dim);
  return out;
}

std::vector<float> reconstruct(const SvdFactors& f) {
  if (auto err = validate(f)) throw *err;
  const int dim = f.dim;
  std::vector<float> out(static_cast<std::size_t>(dim) * dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      double sum = 0.0;
      for (int k = 0; k < f.rank; ++k) {
        sum += static_cast<double>(f.u[static_cast<std::size_t>(i) * f.rank + k]) * f.s[k] *
               f.vt[static_cast<std::size_t>(k) * dim + j];
      }
      out[static_cast<std::size_t>(i) * dim + j] = static_cast<float>(sum);
    }
  }
  return out;
}

double frobenius_distance(std::span<const float> a, std::span<const float> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "matrices differ in size");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = static_cast<double>(a[i]) - b[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

SvdLut decompose_luts(const Lut2DSet& luts) {
  SvdLut out;
  out.dim = luts.dim();
  out.rank = luts.dim();
  for (int c = 0; c < kNumChannels; ++c) {
    for (int p = 0; p < kNumPairs; ++p) {
      const auto pair = static_cast<LutPair>(p);
      out.plane(c, pair) = jacobi_svd(luts.plane(c, pair), luts.dim());
    }
  }
  return out;
}

SvdLut truncate_luts(const SvdLut& lut, int rank) {
  check_rank(rank, lut.rank);
  SvdLut out;
  out.dim = lut.dim;
  out.rank = rank;
  for (std::size_t i = 0; i < lut.planes.size(); ++i) {
    out.planes[i] = truncate(lut.planes[i], rank);
  }
  return out;
}

Lut2DSet reconstruct_luts(const SvdLut& lut) {
  if (auto err = validate(lut)) throw *err;
  Lut2DSet out(lut.dim);
  for (int c = 0; c < kNumChannels; ++c) {
    for (int p = 0; p < kNumPairs; ++p) {
      const auto pair = static_cast<LutPair>(p);
      const auto plane = reconstruct(lut.plane(c, pair));
      std::copy(plane.begin(), plane.end(), out.plane(c, pair).begin());
    }
  }
  if (auto err = validate(out)) throw *err;
  return out;
}

std::vector<RankSweepRow> rank_sweep(const Lut2DSet& luts, const LutWeights& weights,
                                     std::span<const Image> images,
                                     std::span<const int> ranks) {
  if (images.empty()) throw Error(ErrorCode::kDimensionMismatch, "rank sweep needs images");
  for (int r : ranks) check_rank(r, luts.dim());

  const SvdLut full = decompose_luts(luts);
  const Lut2DSet full_luts = reconstruct_luts(full);
  std::vector<Image> reference;
  reference.reserve(images.size());
  for (const auto& img : images) reference.push_back(apply_lut2d(img, full_luts, weights));

  std::vector<RankSweepRow> rows;
  for (int r : ranks) {
    const Lut2DSet approx = reconstruct_luts(truncate_luts(full, r));
    double sum = 0.0;
    for (std::size_t i = 0; i < images.size(); ++i) {
      sum += analysis::psnr(reference[i], apply_lut2d(images[i], approx, weights));
    }
    rows.push_back({r, sum / static_cast<double>(images.size()),
                    kNumChannels * kNumPairs * factored_param_count(luts.dim(), r)});
  }
  return rows;
}

std::vector<RankSweepRow> grid_rank_sweep(const GridSet& grids,
                                          const GridWeights& weights,
                                          std::span<const Image> images,
                                          std::span<const int> ranks) {
  if (images.empty()) throw Error(ErrorCode::kDimensionMismatch, "rank sweep needs images");
  for (int r : ranks) check_rank(r, grids.dim());

  std::vector<SvdFactors> factors;
  for (int k = 0; k < grids.count(); ++k) {
    for (int p = 0; p < kNumPairs; ++p) {
      factors.push_back(jacobi_svd(grids.plane(k, static_cast<GridPair>(p)), grids.dim()));
    }
  }
  auto rebuild = [&](int rank) {
    GridSet out(grids.count(), grids.dim());
    for (int k = 0; k < grids.count(); ++k) {
      for (int p = 0; p < kNumPairs; ++p) {
        const auto plane = reconstruct(truncate(factors[k * kNumPairs + p], rank));
        std::copy(plane.begin(), plane.end(), out.plane(k, static_cast<GridPair>(p)).begin());
      }
    }
    return out;
  };
  auto feature_psnr = [](const SpatialFeatureMap& a, const SpatialFeatureMap& b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i) {
      const double d = static_cast<double>(a.data[i]) - b.data[i];
      sum += d * d;
    }
    const double mse = sum / static_cast<double>(a.data.size());
    return mse == 0.0 ? std::numeric_limits<double>::infinity() : 10.0 * std::log10(1.0 / mse);
  };

  const GridSet full = rebuild(grids.dim());
  std::vector<SpatialFeatureMap> reference;
  for (const auto& img : images) reference.push_back(slice_grid2d(img, full, weights));

  std::vector<RankSweepRow> rows;
  for (int r : ranks) {
    const GridSet approx = rebuild(r);
    double sum = 0.0;
    for (std::size_t i = 0; i < images.size(); ++i) {
      sum += feature_psnr(reference[i], slice_grid2d(images[i], approx, weights));
    }
    rows.push_back({r, sum / static_cast<double>(images.size()),
                    grids.count() * kNumPairs * factored_param_count(grids.dim(), r)});
  }
  return rows;
}

std::string rank_sweep_csv(std::span<const RankSweepRow> rows) {
  std::string out = "rank,psnr_db,params\n";
  char buf[96];
  for (const auto& row : rows) {
    if (std::isinf(row.psnr_db)) {
      std::snprintf(buf, sizeof(buf), "%d,inf,%zu\n", row.rank, row.params);
    } else {
      std::snprintf(buf, sizeof(buf), "%d,%.6f,%zu\n", row.rank, row.psnr_db, row.params);
    }
    out += buf;
  }
  return out;
}

}  // namespace svdlut::svd
