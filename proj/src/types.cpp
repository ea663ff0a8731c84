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

#include "svdlut/types.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace svdlut {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNonFiniteValue: return "NonFiniteValue";
    case ErrorCode::kBadHyperparameter: return "BadHyperparameter";
    case ErrorCode::kBadVertexCount: return "BadVertexCount";
    case ErrorCode::kDegenerateImage: return "DegenerateImage";
    case ErrorCode::kBadGridCount: return "BadGridCount";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kBadRank: return "BadRank";
    case ErrorCode::kBadParams: return "BadParams";
    case ErrorCode::kBadMagic: return "BadMagic";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kTruncatedFile: return "TruncatedFile";
    case ErrorCode::kUnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::kBadMaxval: return "BadMaxval";
    case ErrorCode::kBadResolution: return "BadResolution";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

namespace {

std::optional<Error> check_finite(std::span<const float> values,
                                  const char* what) {
  const auto it = std::find_if(values.begin(), values.end(),
                               [](float v) { return !std::isfinite(v); });
  if (it == values.end()) return std::nullopt;
  return Error(ErrorCode::kNonFiniteValue,
               std::string(what) + " entry " +
                   std::to_string(std::distance(values.begin(), it)) +
                   " is not finite");
}

std::optional<Error> check_length(std::size_t actual, std::size_t expected,
                                  const char* what) {
  if (actual == expected) return std::nullopt;
  return Error(ErrorCode::kDimensionMismatch,
               std::string(what) + " holds " + std::to_string(actual) +
                   " values, expected " + std::to_string(expected));
}

std::optional<Error> check_dim(int dim, const char* what) {
  if (dim >= 2) return std::nullopt;
  return Error(ErrorCode::kBadHyperparameter,
               std::string(what) + " needs at least 2 vertices per axis, got " +
                   std::to_string(dim));
}

template <typename T>
void throw_if_invalid(const T& obj) {
  if (auto err = validate(obj)) throw *err;
}

}  // namespace

Image::Image(int width, int height) : width_(width), height_(height) {
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::kDimensionMismatch,
                "image must be at least 1x1, got " + std::to_string(width) +
                    "x" + std::to_string(height));
  }
  data_.assign(kNumChannels * pixel_count(), 0.0f);
}

Image::Image(int width, int height, std::vector<float> data)
    : width_(width), height_(height), data_(std::move(data)) {
  throw_if_invalid(*this);
}

Lut3D::Lut3D(int dim) : dim_(dim) {
  if (auto err = check_dim(dim, "Lut3D")) throw *err;
  tables_.assign(kNumChannels * cube_size(), 0.0f);
}

Lut3D::Lut3D(int dim, std::vector<float> tables)
    : dim_(dim), tables_(std::move(tables)) {
  throw_if_invalid(*this);
}

Lut3D Lut3D::identity(int dim) {
  Lut3D lut(dim);
  const float step = 1.0f / static_cast<float>(dim - 1);
  for (int c = 0; c < kNumChannels; ++c) {
    auto cube = lut.cube(c);
    for (int ir = 0; ir < dim; ++ir) {
      for (int ig = 0; ig < dim; ++ig) {
        for (int ib = 0; ib < dim; ++ib) {
          const int idx[3] = {ir, ig, ib};
          cube[(static_cast<std::size_t>(ir) * dim + ig) * dim + ib] =
              static_cast<float>(idx[c]) * step;
        }
      }
    }
  }
  return lut;
}

Lut2DSet::Lut2DSet(int dim) : dim_(dim) {
  if (auto err = check_dim(dim, "Lut2DSet")) throw *err;
  planes_.assign(kNumChannels * kNumPairs * plane_size(), 0.0f);
}

Lut2DSet::Lut2DSet(int dim, std::vector<float> planes)
    : dim_(dim), planes_(std::move(planes)) {
  throw_if_invalid(*this);
}

Lut2DSet Lut2DSet::identity(int dim) {
  Lut2DSet luts(dim);
  const float step = 1.0f / static_cast<float>(dim - 1);
  auto r = luts.plane(0, LutPair::kRG);
  auto g = luts.plane(1, LutPair::kRG);
  auto b = luts.plane(2, LutPair::kRB);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      const std::size_t idx = static_cast<std::size_t>(i) * dim + j;
      r[idx] = static_cast<float>(i) * step;
      g[idx] = static_cast<float>(j) * step;
      b[idx] = static_cast<float>(j) * step;
    }
  }
  return luts;
}

LutWeights identity_lut_weights() {
  LutWeights w{};
  w[0].w = {1.0f, 0.0f, 0.0f};
  w[1].w = {1.0f, 0.0f, 0.0f};
  w[2].w = {0.0f, 1.0f, 0.0f};
  return w;
}

GridSet::GridSet(int count, int dim) : count_(count), dim_(dim) {
  if (count < 1) {
    throw Error(ErrorCode::kBadHyperparameter, "GridSet needs at least one grid");
  }
  if (auto err = check_dim(dim, "GridSet")) throw *err;
  planes_.assign(static_cast<std::size_t>(count) * kNumPairs * plane_size(), 0.0f);
}

GridSet::GridSet(int count, int dim, std::vector<float> planes)
    : count_(count), dim_(dim), planes_(std::move(planes)) {
  throw_if_invalid(*this);
}

std::optional<Error> validate(const Image& image) {
  if (image.width() < 1 || image.height() < 1) {
    return Error(ErrorCode::kDimensionMismatch, "image must be at least 1x1");
  }
  if (auto err = check_length(image.data().size(),
                              kNumChannels * image.pixel_count(), "image")) {
    return err;
  }
  return check_finite(image.data(), "image");
}

std::optional<Error> validate(const Lut3D& lut) {
  if (auto err = check_dim(lut.dim(), "Lut3D")) return err;
  if (auto err = check_length(lut.data().size(), kNumChannels * lut.cube_size(),
                              "Lut3D")) {
    return err;
  }
  return check_finite(lut.data(), "Lut3D");
}

std::optional<Error> validate(const Lut2DSet& luts) {
  if (auto err = check_dim(luts.dim(), "Lut2DSet")) return err;
  if (auto err = check_length(luts.data().size(),
                              kNumChannels * kNumPairs * luts.plane_size(),
                              "Lut2DSet")) {
    return err;
  }
  return check_finite(luts.data(), "Lut2DSet");
}

namespace {

std::optional<Error> validate_plane_weights(std::span<const PlaneWeights> ws,
                                            const char* what) {
  for (const auto& pw : ws) {
    if (auto err = check_finite(pw.w, what)) return err;
    if (!std::isfinite(pw.bias)) {
      return Error(ErrorCode::kNonFiniteValue,
                   std::string(what) + " bias is not finite");
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Error> validate(const LutWeights& weights) {
  return validate_plane_weights(weights, "LutWeights");
}

std::optional<Error> validate(const GridWeights& weights) {
  return validate_plane_weights(weights, "GridWeights");
}

std::optional<Error> validate(const GridSet& grids) {
  if (grids.count() < 1) {
    return Error(ErrorCode::kBadHyperparameter, "GridSet needs at least one grid");
  }
  if (auto err = check_dim(grids.dim(), "GridSet")) return err;
  if (auto err = check_length(grids.data().size(),
                              static_cast<std::size_t>(grids.count()) *
                                  kNumPairs * grids.plane_size(),
                              "GridSet")) {
    return err;
  }
  return check_finite(grids.data(), "GridSet");
}

std::optional<Error> validate(const SvdFactors& f) {
  if (f.dim < 1 || f.rank < 1 || f.rank > f.dim) {
    return Error(ErrorCode::kBadRank, "SvdFactors rank " + std::to_string(f.rank) +
                                          " invalid for dim " + std::to_string(f.dim));
  }
  const std::size_t block = static_cast<std::size_t>(f.dim) * f.rank;
  if (auto err = check_length(f.u.size(), block, "SvdFactors U")) return err;
  if (auto err = check_length(f.s.size(), f.rank, "SvdFactors S")) return err;
  if (auto err = check_length(f.vt.size(), block, "SvdFactors Vt")) return err;
  if (auto err = check_finite(f.u, "SvdFactors U")) return err;
  if (auto err = check_finite(f.s, "SvdFactors S")) return err;
  return check_finite(f.vt, "SvdFactors Vt");
}

std::optional<Error> validate(const SvdLut& lut) {
  if (auto err = check_dim(lut.dim, "SvdLut")) return err;
  for (const auto& f : lut.planes) {
    if (f.dim != lut.dim || f.rank != lut.rank) {
      return Error(ErrorCode::kDimensionMismatch,
                   "SvdLut plane shape differs from the set");
    }
    if (auto err = validate(f)) return err;
  }
  return std::nullopt;
}

}  // namespace svdlut
