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
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "svdlut/types.hpp"

namespace svdlut::net {

// Backbone input resolution and layer layout.
inline constexpr int kBackboneInput = 256;
inline constexpr int kConvLayers = 5;
inline constexpr int kNormLayers = 4;
inline constexpr int kPooledSize = 2;
inline constexpr float kLeakySlope = 0.2f;
inline constexpr float kNormEpsilon = 1e-5f;

// Three plane weights and one bias per output channel (LUTs) or per grid.
inline constexpr int kPlaneWeights = 3;
inline constexpr int kPlaneBiases = 1;

struct Hyperparams {
  int base_width = 8;          // m
  int lut_dim = 33;            // D_t
  int grid_dim = 17;           // D_s
  int grid_count = 6;          // K
  int rank = 8;                // N_S
  int grid_hidden = 8;         // M_s
  int lut_hidden = 8;          // M_t
  int grid_weight_hidden = 8;  // M_sw
  int lut_weight_hidden = 8;   // M_tw

  int context_size() const { return 4 * 8 * base_width; }  // 8m x 2 x 2

  bool operator==(const Hyperparams&) const = default;
};

std::optional<Error> validate(const Hyperparams& hp);

struct Tensor {
  std::vector<int> shape;
  std::vector<float> data;
};

std::size_t element_count(std::span<const int> shape);

struct TensorSpec {
  std::string name;
  std::vector<int> shape;
};

// Every tensor of the model in canonical order: backbone convolutions and
// norms interleaved by layer, then the grid, grid-weight, LUT and LUT-weight
// generators, each as fc1.weight, fc1.bias, fc2.weight, fc2.bias.
// FC weights are [out, in]; conv weights are [out, in, 3, 3].
std::vector<TensorSpec> architecture(const Hyperparams& hp);

struct ModelParams {
  Hyperparams hyper;
  std::map<std::string, Tensor> tensors;

  const Tensor& tensor(const std::string& name) const;
};

// kBadHyperparameter for bad hyperparameters, kBadParams when the tensor set
// or any shape differs from architecture(), kNonFiniteValue for bad values.
std::optional<Error> validate(const ModelParams& params);

// Structural count from the architecture.
std::size_t param_count(const Hyperparams& hp);
// Scalar count over all tensors present.
std::size_t param_count(const ModelParams& params);

// Uniform in [-0.05, 0.05], filled in canonical tensor order from a 32-bit
// Mersenne twister; identical on every platform.
ModelParams random_init(std::uint64_t seed, const Hyperparams& hp = {});
ModelParams zero_init(const Hyperparams& hp = {});

// Bilinear resampling with half-pixel centers (align_corners = false).
Image resize_bilinear(const Image& image, int width, int height);

// Backbone: resize to 256x256, five stride-2 3x3 conv layers
// (conv -> LeakyReLU -> InstanceNorm, no norm on the last), dropout as
// identity, 4x4 average pooling to 2x2, flatten. Returns 32m features.
std::vector<float> backbone_forward(const Image& image, const ModelParams& params);

struct GridOutputs {
  GridSet grids;
  GridWeights weights;
};

struct LutOutputs {
  SvdLut factors;
  LutWeights weights;
};

GridOutputs generate_grids(std::span<const float> context, const ModelParams& params);
LutOutputs generate_luts(std::span<const float> context, const ModelParams& params);

struct GeneratorOutputs {
  GridSet grids;
  GridWeights grid_weights;
  SvdLut lut_factors;
  LutWeights lut_weights;
};

// The four two-layer FC heads.
GeneratorOutputs generators_forward(std::span<const float> context,
                                    const ModelParams& params);

// Everything the per-pixel transform needs for one image; 2D LUT planes are
// reconstructed from the generated factors.
struct Prediction {
  Lut2DSet luts;
  LutWeights lut_weights;
  GridSet grids;
  GridWeights grid_weights;
};

Prediction predict(const Image& image, const ModelParams& params);

// Little-endian binary checkpoint:
//   "SVDW" | u32 version (1) | 9 x u32 hyperparameters in Hyperparams order |
//   u32 tensor count | per tensor: u32 name length, name bytes, u32 rank,
//   rank x u32 dims, float32 data.
inline constexpr std::uint32_t kWeightsVersion = 1;

std::vector<std::uint8_t> encode_weights(const ModelParams& params);
ModelParams decode_weights(std::span<const std::uint8_t> bytes);
void save_weights(const std::filesystem::path& path, const ModelParams& params);
ModelParams load_weights(const std::filesystem::path& path);

}  // namespace svdlut::net
