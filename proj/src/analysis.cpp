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

#include "svdlut/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "svdlut/image_io.hpp"
#include "svdlut/interp.hpp"

namespace svdlut::analysis {
namespace {

void check_dim(int dim) {
  if (dim < 2) {
    throw Error(ErrorCode::kBadVertexCount,
                "tables need at least 2 vertices, got " + std::to_string(dim));
  }
}

void check_same_size(const Image& a, const Image& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "images differ in size: " + std::to_string(a.width()) + "x" +
                    std::to_string(a.height()) + " vs " + std::to_string(b.width()) +
                    "x" + std::to_string(b.height()));
  }
}

struct Lab {
  double l, a, b;
};

double srgb_to_linear(double v) {
  return v <= 0.04045 ? v / 12.92 : std::pow((v + 0.055) / 1.055, 2.4);
}

// sRGB primaries, D65.
constexpr double kRgbToXyz[3][3] = {{0.4124564, 0.3575761, 0.1804375},
                                    {0.2126729, 0.7151522, 0.0721750},
                                    {0.0193339, 0.1191920, 0.9503041}};

double lab_f(double t) {
  constexpr double kDelta = 6.0 / 29.0;
  return t > kDelta * kDelta * kDelta ? std::cbrt(t)
                                      : t / (3.0 * kDelta * kDelta) + 4.0 / 29.0;
}

Lab srgb_to_lab(double r, double g, double b) {
  const double lin[3] = {srgb_to_linear(r), srgb_to_linear(g), srgb_to_linear(b)};
  double xyz[3];
  double white[3];
  for (int i = 0; i < 3; ++i) {
    xyz[i] = kRgbToXyz[i][0] * lin[0] + kRgbToXyz[i][1] * lin[1] + kRgbToXyz[i][2] * lin[2];
    // Reference white is the image of RGB (1, 1, 1).
    white[i] = kRgbToXyz[i][0] + kRgbToXyz[i][1] + kRgbToXyz[i][2];
  }
  const double fx = lab_f(xyz[0] / white[0]);
  const double fy = lab_f(xyz[1] / white[1]);
  const double fz = lab_f(xyz[2] / white[2]);
  return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

}  // namespace

double utilization_rate(const Image& image, int dim, LutMode mode) {
  check_dim(dim);
  if (image.data().size() != kNumChannels * image.pixel_count()) {
    throw Error(ErrorCode::kDimensionMismatch, "image buffer does not match its size");
  }
  const std::size_t d = dim;
  const auto r = image.channel(0);
  const auto g = image.channel(1);
  const auto b = image.channel(2);

  std::vector<bool> hit;
  std::size_t total = 0;
  switch (mode) {
    case LutMode::k3D: total = d * d * d; break;
    case LutMode::k2D: total = kNumPairs * d * d; break;
    case LutMode::k1D: total = kNumChannels * d; break;
  }
  hit.assign(total, false);

  for (std::size_t i = 0; i < image.pixel_count(); ++i) {
    const std::array<std::size_t, 3> lo = {
        static_cast<std::size_t>(interp::bracket_unchecked(r[i], dim).left),
        static_cast<std::size_t>(interp::bracket_unchecked(g[i], dim).left),
        static_cast<std::size_t>(interp::bracket_unchecked(b[i], dim).left)};
    switch (mode) {
      case LutMode::k3D:
        for (std::size_t dr = 0; dr < 2; ++dr)
          for (std::size_t dg = 0; dg < 2; ++dg)
            for (std::size_t db = 0; db < 2; ++db)
              hit[((lo[0] + dr) * d + lo[1] + dg) * d + lo[2] + db] = true;
        break;
      case LutMode::k2D: {
        constexpr int kAxes[kNumPairs][2] = {{0, 1}, {0, 2}, {1, 2}};
        for (int p = 0; p < kNumPairs; ++p) {
          for (std::size_t da = 0; da < 2; ++da)
            for (std::size_t db = 0; db < 2; ++db)
              hit[p * d * d + (lo[kAxes[p][0]] + da) * d + lo[kAxes[p][1]] + db] = true;
        }
        break;
      }
      case LutMode::k1D:
        for (int c = 0; c < kNumChannels; ++c) {
          hit[c * d + lo[c]] = true;
          hit[c * d + lo[c] + 1] = true;
        }
        break;
    }
  }
  const auto referenced = std::count(hit.begin(), hit.end(), true);
  return 100.0 * static_cast<double>(referenced) / static_cast<double>(total);
}

OccurrenceMap::OccurrenceMap(int dim) : dim_(dim) {
  check_dim(dim);
  cube_.assign(static_cast<std::size_t>(dim) * dim * dim, 0);
}

void OccurrenceMap::ingest(const Image& image) {
  const auto r = image.channel(0);
  const auto g = image.channel(1);
  const auto b = image.channel(2);
  const std::size_t d = dim_;
  for (std::size_t i = 0; i < image.pixel_count(); ++i) {
    const std::size_t ir = interp::bracket_unchecked(r[i], dim_).left;
    const std::size_t ig = interp::bracket_unchecked(g[i], dim_).left;
    const std::size_t ib = interp::bracket_unchecked(b[i], dim_).left;
    for (std::size_t dr = 0; dr < 2; ++dr)
      for (std::size_t dg = 0; dg < 2; ++dg)
        for (std::size_t db = 0; db < 2; ++db)
          ++cube_[((ir + dr) * d + ig + dg) * d + ib + db];
  }
}

void OccurrenceMap::merge(const OccurrenceMap& other) {
  if (other.dim_ != dim_) {
    throw Error(ErrorCode::kDimensionMismatch, "occurrence maps differ in dim");
  }
  for (std::size_t i = 0; i < cube_.size(); ++i) cube_[i] += other.cube_[i];
}

std::uint64_t OccurrenceMap::total() const noexcept {
  std::uint64_t sum = 0;
  for (auto v : cube_) sum += v;
  return sum;
}

std::vector<std::uint64_t> OccurrenceMap::projection(LutPair pair) const {
  const std::size_t d = dim_;
  std::vector<std::uint64_t> out(d * d, 0);
  for (std::size_t ir = 0; ir < d; ++ir) {
    for (std::size_t ig = 0; ig < d; ++ig) {
      for (std::size_t ib = 0; ib < d; ++ib) {
        const auto v = cube_[(ir * d + ig) * d + ib];
        switch (pair) {
          case LutPair::kRG: out[ir * d + ig] += v; break;
          case LutPair::kRB: out[ir * d + ib] += v; break;
          case LutPair::kGB: out[ig * d + ib] += v; break;
        }
      }
    }
  }
  return out;
}

OccurrenceMap occurrence_stats(std::span<const Image> images, int dim) {
  OccurrenceMap map(dim);
  for (const auto& img : images) map.ingest(img);
  return map;
}

std::vector<std::uint8_t> heatmap_pgm(std::span<const std::uint64_t> projection, int dim) {
  const std::size_t n = static_cast<std::size_t>(dim) * dim;
  if (projection.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "projection is not dim x dim");
  }
  const std::uint64_t peak = *std::max_element(projection.begin(), projection.end());
  std::vector<std::uint16_t> levels(n, 0);
  if (peak > 0) {
    for (std::size_t i = 0; i < n; ++i) {
      levels[i] = static_cast<std::uint16_t>(
          std::llround(65535.0 * static_cast<double>(projection[i]) / static_cast<double>(peak)));
    }
  }
  return encode_pgm16(levels, dim, dim);
}

double psnr(const Image& a, const Image& b) {
  check_same_size(a, b);
  const auto da = a.data();
  const auto db = b.data();
  double sum = 0.0;
  for (std::size_t i = 0; i < da.size(); ++i) {
    const double d = static_cast<double>(da[i]) - static_cast<double>(db[i]);
    sum += d * d;
  }
  if (sum == 0.0) return std::numeric_limits<double>::infinity();
  const double mse = sum / static_cast<double>(da.size());
  return 10.0 * std::log10(1.0 / mse);
}

double delta_e_ab(const Image& a, const Image& b) {
  check_same_size(a, b);
  double sum = 0.0;
  for (int y = 0; y < a.height(); ++y) {
    for (int x = 0; x < a.width(); ++x) {
      const Lab la = srgb_to_lab(a.at(0, x, y), a.at(1, x, y), a.at(2, x, y));
      const Lab lb = srgb_to_lab(b.at(0, x, y), b.at(1, x, y), b.at(2, x, y));
      sum += std::sqrt((la.l - lb.l) * (la.l - lb.l) + (la.a - lb.a) * (la.a - lb.a) +
                       (la.b - lb.b) * (la.b - lb.b));
    }
  }
  return sum / static_cast<double>(a.pixel_count());
}

}  // namespace svdlut::analysis
