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

#include "svdlut/network.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "svdlut/svd.hpp"
#include "svdlut/synthetic.hpp"

namespace svdlut::net {
namespace {

constexpr float kInitRange = 0.05f;

// Output width of each conv layer, in units of m.
constexpr int kWidthMultiplier[kConvLayers] = {1, 2, 4, 8, 8};

std::string conv_name(int layer, const char* field) {
  return "backbone.conv" + std::to_string(layer + 1) + "." + field;
}
std::string norm_name(int layer, const char* field) {
  return "backbone.norm" + std::to_string(layer + 1) + "." + field;
}

struct HeadShape {
  const char* prefix;
  int hidden;
  int outputs;
};

std::vector<HeadShape> heads(const Hyperparams& hp) {
  const int per_set = kPlaneWeights + kPlaneBiases;
  const int lut_planes = kNumChannels * kNumPairs;
  return {
      {"grid_gen", hp.grid_hidden, hp.grid_count * kNumPairs * hp.grid_dim * hp.grid_dim},
      {"grid_weight_gen", hp.grid_weight_hidden, hp.grid_count * per_set},
      {"lut_gen", hp.lut_hidden,
       lut_planes * (hp.lut_dim * hp.rank + hp.rank + hp.lut_dim * hp.rank)},
      {"lut_weight_gen", hp.lut_weight_hidden, kNumChannels * per_set},
  };
}

// 3x3 convolution, stride 2, zero padding 1. Input and output are [c][y][x].
std::vector<float> conv3x3_s2(const std::vector<float>& in, int channels, int height,
                              int width, const Tensor& weight, const Tensor& bias,
                              int& out_height, int& out_width) {
  const int out_channels = weight.shape[0];
  out_height = (height - 1) / 2 + 1;
  out_width = (width - 1) / 2 + 1;
  const std::size_t out_plane = static_cast<std::size_t>(out_height) * out_width;
  std::vector<float> out(out_channels * out_plane);

  for (int o = 0; o < out_channels; ++o) {
    float* dst = out.data() + o * out_plane;
    std::fill(dst, dst + out_plane, bias.data[o]);
    for (int c = 0; c < channels; ++c) {
      const float* src = in.data() + static_cast<std::size_t>(c) * height * width;
      const float* k = weight.data.data() + (static_cast<std::size_t>(o) * channels + c) * 9;
      for (int ky = 0; ky < 3; ++ky) {
        for (int kx = 0; kx < 3; ++kx) {
          const float w = k[ky * 3 + kx];
          for (int oy = 0; oy < out_height; ++oy) {
            const int iy = oy * 2 + ky - 1;
            if (iy < 0 || iy >= height) continue;
            const float* row = src + static_cast<std::size_t>(iy) * width;
            float* out_row = dst + static_cast<std::size_t>(oy) * out_width;
            for (int ox = 0; ox < out_width; ++ox) {
              const int ix = ox * 2 + kx - 1;
              if (ix < 0 || ix >= width) continue;
              out_row[ox] += w * row[ix];
            }
          }
        }
      }
    }
  }
  return out;
}

void leaky_relu(std::vector<float>& x) {
  for (float& v : x) v = v >= 0.0f ? v : kLeakySlope * v;
}

// Per-channel normalization with population variance. A constant channel
// normalizes to zero, so its output is the shift.
void instance_norm(std::vector<float>& x, int channels, std::size_t plane,
                   const Tensor& scale, const Tensor& shift) {
  for (int c = 0; c < channels; ++c) {
    float* v = x.data() + c * plane;
    double mean = 0.0;
    for (std::size_t i = 0; i < plane; ++i) mean += v[i];
    mean /= static_cast<double>(plane);
    double var = 0.0;
    for (std::size_t i = 0; i < plane; ++i) var += (v[i] - mean) * (v[i] - mean);
    var /= static_cast<double>(plane);
    const float inv_std = static_cast<float>(1.0 / std::sqrt(var + kNormEpsilon));
    const float m = static_cast<float>(mean);
    for (std::size_t i = 0; i < plane; ++i) {
      v[i] = (v[i] - m) * inv_std * scale.data[c] + shift.data[c];
    }
  }
}

std::vector<float> fully_connected(std::span<const float> x, const Tensor& weight,
                                   const Tensor& bias) {
  const int outputs = weight.shape[0];
  const int inputs = weight.shape[1];
  std::vector<float> y(outputs);
  for (int o = 0; o < outputs; ++o) {
    const float* w = weight.data.data() + static_cast<std::size_t>(o) * inputs;
    float acc = bias.data[o];
    for (int i = 0; i < inputs; ++i) acc += w[i] * x[i];
    y[o] = acc;
  }
  return y;
}

std::vector<float> run_head(std::span<const float> context, const ModelParams& params,
                            const std::string& prefix) {
  const auto hidden = fully_connected(context, params.tensor(prefix + ".fc1.weight"),
                                      params.tensor(prefix + ".fc1.bias"));
  return fully_connected(hidden, params.tensor(prefix + ".fc2.weight"),
                         params.tensor(prefix + ".fc2.bias"));
}

void check_params(const ModelParams& params) {
  if (auto err = validate(params)) throw *err;
}

void check_context(std::span<const float> context, const Hyperparams& hp) {
  if (static_cast<int>(context.size()) != hp.context_size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "context holds " + std::to_string(context.size()) + " features, expected " +
                    std::to_string(hp.context_size()));
  }
}

PlaneWeights plane_weights_at(std::span<const float> values, std::size_t index) {
  const std::size_t base = index * (kPlaneWeights + kPlaneBiases);
  PlaneWeights pw;
  for (int i = 0; i < kPlaneWeights; ++i) pw.w[i] = values[base + i];
  pw.bias = values[base + kPlaneWeights];
  return pw;
}

}  // namespace

std::optional<Error> validate(const Hyperparams& hp) {
  auto bad = [](const std::string& msg) {
    return std::optional<Error>(Error(ErrorCode::kBadHyperparameter, msg));
  };
  if (hp.base_width < 1) return bad("base width m must be >= 1");
  if (hp.lut_dim < 2) return bad("LUT dim must be >= 2");
  if (hp.grid_dim < 2) return bad("grid dim must be >= 2");
  if (hp.grid_count < 1 || hp.grid_count % kNumChannels != 0) {
    return bad("grid count must be a positive multiple of 3");
  }
  if (hp.rank < 1 || hp.rank > hp.lut_dim) return bad("rank must be in [1, LUT dim]");
  if (hp.grid_hidden < 1 || hp.lut_hidden < 1 || hp.grid_weight_hidden < 1 ||
      hp.lut_weight_hidden < 1) {
    return bad("hidden widths must be >= 1");
  }
  return std::nullopt;
}

std::size_t element_count(std::span<const int> shape) {
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1},
                         [](std::size_t a, int d) { return a * static_cast<std::size_t>(d); });
}

std::vector<TensorSpec> architecture(const Hyperparams& hp) {
  if (auto err = validate(hp)) throw *err;
  std::vector<TensorSpec> specs;
  int in_channels = kNumChannels;
  for (int layer = 0; layer < kConvLayers; ++layer) {
    const int out_channels = kWidthMultiplier[layer] * hp.base_width;
    specs.push_back({conv_name(layer, "weight"), {out_channels, in_channels, 3, 3}});
    specs.push_back({conv_name(layer, "bias"), {out_channels}});
    if (layer < kNormLayers) {
      specs.push_back({norm_name(layer, "weight"), {out_channels}});
      specs.push_back({norm_name(layer, "bias"), {out_channels}});
    }
    in_channels = out_channels;
  }
  for (const auto& head : heads(hp)) {
    const std::string p = head.prefix;
    specs.push_back({p + ".fc1.weight", {head.hidden, hp.context_size()}});
    specs.push_back({p + ".fc1.bias", {head.hidden}});
    specs.push_back({p + ".fc2.weight", {head.outputs, head.hidden}});
    specs.push_back({p + ".fc2.bias", {head.outputs}});
  }
  return specs;
}

const Tensor& ModelParams::tensor(const std::string& name) const {
  const auto it = tensors.find(name);
  if (it == tensors.end()) throw Error(ErrorCode::kBadParams, "missing tensor " + name);
  return it->second;
}

std::optional<Error> validate(const ModelParams& params) {
  if (auto err = validate(params.hyper)) return err;
  const auto specs = architecture(params.hyper);
  if (specs.size() != params.tensors.size()) {
    return Error(ErrorCode::kBadParams, "model has " + std::to_string(params.tensors.size()) +
                                            " tensors, expected " + std::to_string(specs.size()));
  }
  for (const auto& spec : specs) {
    const auto it = params.tensors.find(spec.name);
    if (it == params.tensors.end()) {
      return Error(ErrorCode::kBadParams, "missing tensor " + spec.name);
    }
    const Tensor& t = it->second;
    if (t.shape != spec.shape || t.data.size() != element_count(spec.shape)) {
      return Error(ErrorCode::kBadParams, "tensor " + spec.name + " has the wrong shape");
    }
    if (!std::all_of(t.data.begin(), t.data.end(), [](float v) { return std::isfinite(v); })) {
      return Error(ErrorCode::kNonFiniteValue, "tensor " + spec.name + " is not finite");
    }
  }
  return std::nullopt;
}

std::size_t param_count(const Hyperparams& hp) {
  std::size_t total = 0;
  for (const auto& spec : architecture(hp)) total += element_count(spec.shape);
  return total;
}

std::size_t param_count(const ModelParams& params) {
  std::size_t total = 0;
  for (const auto& [name, t] : params.tensors) total += t.data.size();
  return total;
}

ModelParams random_init(std::uint64_t seed, const Hyperparams& hp) {
  ModelParams params = zero_init(hp);
  UniformSource source(seed);
  for (const auto& spec : architecture(hp)) {
    for (float& v : params.tensors.at(spec.name).data) v = source.next(-kInitRange, kInitRange);
  }
  return params;
}

ModelParams zero_init(const Hyperparams& hp) {
  ModelParams params;
  params.hyper = hp;
  for (auto& spec : architecture(hp)) {
    Tensor t;
    t.data.assign(element_count(spec.shape), 0.0f);
    t.shape = std::move(spec.shape);
    params.tensors.emplace(std::move(spec.name), std::move(t));
  }
  return params;
}

Image resize_bilinear(const Image& image, int width, int height) {
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::kDimensionMismatch, "resize target must be at least 1x1");
  }
  struct Tap {
    int lo, hi;
    float frac;
  };
  auto taps = [](int in, int out) {
    std::vector<Tap> t(out);
    const double scale = static_cast<double>(in) / out;
    for (int o = 0; o < out; ++o) {
      const double src = std::max(0.0, (o + 0.5) * scale - 0.5);
      const int lo = std::min(static_cast<int>(src), in - 1);
      t[o] = {lo, std::min(lo + 1, in - 1), static_cast<float>(src - lo)};
    }
    return t;
  };
  const auto tx = taps(image.width(), width);
  const auto ty = taps(image.height(), height);

  Image out(width, height);
  for (int c = 0; c < kNumChannels; ++c) {
    for (int y = 0; y < height; ++y) {
      const Tap& vy = ty[y];
      for (int x = 0; x < width; ++x) {
        const Tap& vx = tx[x];
        const float top = image.at(c, vx.lo, vy.lo) * (1.0f - vx.frac) +
                          image.at(c, vx.hi, vy.lo) * vx.frac;
        const float bottom = image.at(c, vx.lo, vy.hi) * (1.0f - vx.frac) +
                             image.at(c, vx.hi, vy.hi) * vx.frac;
        out.at(c, x, y) = top * (1.0f - vy.frac) + bottom * vy.frac;
      }
    }
  }
  return out;
}

std::vector<float> backbone_forward(const Image& image, const ModelParams& params) {
  check_params(params);
  const Image resized = resize_bilinear(image, kBackboneInput, kBackboneInput);

  std::vector<float> x(resized.data().begin(), resized.data().end());
  int channels = kNumChannels;
  int height = kBackboneInput;
  int width = kBackboneInput;
  for (int layer = 0; layer < kConvLayers; ++layer) {
    int out_h = 0;
    int out_w = 0;
    x = conv3x3_s2(x, channels, height, width, params.tensor(conv_name(layer, "weight")),
                   params.tensor(conv_name(layer, "bias")), out_h, out_w);
    channels = kWidthMultiplier[layer] * params.hyper.base_width;
    height = out_h;
    width = out_w;
    leaky_relu(x);
    if (layer < kNormLayers) {
      instance_norm(x, channels, static_cast<std::size_t>(height) * width,
                    params.tensor(norm_name(layer, "weight")),
                    params.tensor(norm_name(layer, "bias")));
    }
  }
  // Dropout is the identity at inference.

  const int window_h = height / kPooledSize;
  const int window_w = width / kPooledSize;
  std::vector<float> context;
  context.reserve(static_cast<std::size_t>(channels) * kPooledSize * kPooledSize);
  for (int c = 0; c < channels; ++c) {
    for (int py = 0; py < kPooledSize; ++py) {
      for (int px = 0; px < kPooledSize; ++px) {
        float sum = 0.0f;
        for (int y = py * window_h; y < (py + 1) * window_h; ++y) {
          for (int xx = px * window_w; xx < (px + 1) * window_w; ++xx) {
            sum += x[(static_cast<std::size_t>(c) * height + y) * width + xx];
          }
        }
        context.push_back(sum / static_cast<float>(window_h * window_w));
      }
    }
  }
  return context;
}

GridOutputs generate_grids(std::span<const float> context, const ModelParams& params) {
  check_params(params);
  const Hyperparams& hp = params.hyper;
  check_context(context, hp);

  std::vector<float> grid_values = run_head(context, params, "grid_gen");
  const auto weight_values = run_head(context, params, "grid_weight_gen");

  GridOutputs out{GridSet(hp.grid_count, hp.grid_dim, std::move(grid_values)), {}};
  out.weights.reserve(hp.grid_count);
  for (int k = 0; k < hp.grid_count; ++k) {
    out.weights.push_back(plane_weights_at(weight_values, k));
  }
  return out;
}

LutOutputs generate_luts(std::span<const float> context, const ModelParams& params) {
  check_params(params);
  const Hyperparams& hp = params.hyper;
  check_context(context, hp);

  const auto values = run_head(context, params, "lut_gen");
  const auto weight_values = run_head(context, params, "lut_weight_gen");

  // Output layout: all U planes, then all S vectors, then all V planes, each
  // in [c][pair] order. U and V are D_t x N_S row-major.
  const int dim = hp.lut_dim;
  const int rank = hp.rank;
  const std::size_t factor_size = static_cast<std::size_t>(dim) * rank;
  const std::size_t plane_count = kNumChannels * kNumPairs;
  const float* u_block = values.data();
  const float* s_block = u_block + plane_count * factor_size;
  const float* v_block = s_block + plane_count * rank;

  LutOutputs out;
  out.factors.dim = dim;
  out.factors.rank = rank;
  for (std::size_t p = 0; p < plane_count; ++p) {
    SvdFactors& f = out.factors.planes[p];
    f.dim = dim;
    f.rank = rank;
    f.u.assign(u_block + p * factor_size, u_block + (p + 1) * factor_size);
    f.s.assign(s_block + p * rank, s_block + (p + 1) * rank);
    f.vt.resize(factor_size);
    const float* v = v_block + p * factor_size;
    for (int i = 0; i < dim; ++i) {
      for (int k = 0; k < rank; ++k) {
        f.vt[static_cast<std::size_t>(k) * dim + i] = v[static_cast<std::size_t>(i) * rank + k];
      }
    }
  }
  for (int c = 0; c < kNumChannels; ++c) out.weights[c] = plane_weights_at(weight_values, c);
  return out;
}

GeneratorOutputs generators_forward(std::span<const float> context,
                                    const ModelParams& params) {
  GridOutputs grids = generate_grids(context, params);
  LutOutputs luts = generate_luts(context, params);
  return {std::move(grids.grids), std::move(grids.weights), std::move(luts.factors),
          luts.weights};
}

Prediction predict(const Image& image, const ModelParams& params) {
  const auto context = backbone_forward(image, params);
  GeneratorOutputs gen = generators_forward(context, params);
  return {svd::reconstruct_luts(gen.lut_factors), gen.lut_weights, std::move(gen.grids),
          std::move(gen.grid_weights)};
}

}  // namespace svdlut::net
