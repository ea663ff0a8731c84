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

#include <algorithm>
#include <bit>
#include <cstring>

#include "svdlut/file_io.hpp"
#include "svdlut/network.hpp"

namespace svdlut::net {
namespace {

constexpr char kMagic[4] = {'S', 'V', 'D', 'W'};
constexpr std::uint32_t kMaxNameLength = 4096;
constexpr std::uint32_t kMaxRank = 8;

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::span<const std::uint8_t> take(std::size_t n, const char* what) {
    if (bytes_.size() - pos_ < n) {
      throw Error(ErrorCode::kTruncatedFile, std::string("file ends inside ") + what);
    }
    auto out = bytes_.subspan(pos_, n);
    pos_ += n;
    return out;
  }

  std::uint32_t u32(const char* what) {
    const auto b = take(4, what);
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
  }

  bool at_end() const { return pos_ == bytes_.size(); }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

int* hyper_fields(Hyperparams& hp, int index) {
  int* fields[] = {&hp.base_width,  &hp.lut_dim,    &hp.grid_dim,
                   &hp.grid_count,  &hp.rank,       &hp.grid_hidden,
                   &hp.lut_hidden,  &hp.grid_weight_hidden, &hp.lut_weight_hidden};
  return fields[index];
}
constexpr int kHyperFieldCount = 9;

}  // namespace

std::vector<std::uint8_t> encode_weights(const ModelParams& params) {
  if (auto err = validate(params)) throw *err;
  std::vector<std::uint8_t> out(kMagic, kMagic + 4);
  put_u32(out, kWeightsVersion);
  Hyperparams hp = params.hyper;
  for (int i = 0; i < kHyperFieldCount; ++i) {
    put_u32(out, static_cast<std::uint32_t>(*hyper_fields(hp, i)));
  }
  const auto specs = architecture(hp);
  put_u32(out, static_cast<std::uint32_t>(specs.size()));
  for (const auto& spec : specs) {
    const Tensor& t = params.tensor(spec.name);
    put_u32(out, static_cast<std::uint32_t>(spec.name.size()));
    out.insert(out.end(), spec.name.begin(), spec.name.end());
    put_u32(out, static_cast<std::uint32_t>(t.shape.size()));
    for (int d : t.shape) put_u32(out, static_cast<std::uint32_t>(d));
    for (float v : t.data) put_u32(out, std::bit_cast<std::uint32_t>(v));
  }
  return out;
}

ModelParams decode_weights(std::span<const std::uint8_t> bytes) {
  Reader in(bytes);
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw Error(ErrorCode::kBadMagic, "not an SVDW weight file");
  }
  in.take(4, "magic");
  const std::uint32_t version = in.u32("version");
  if (version != kWeightsVersion) {
    throw Error(ErrorCode::kUnsupportedVersion,
                "weight file version " + std::to_string(version));
  }

  ModelParams params;
  for (int i = 0; i < kHyperFieldCount; ++i) {
    const std::uint32_t v = in.u32("hyperparameters");
    if (v > 1'000'000) throw Error(ErrorCode::kBadHyperparameter, "hyperparameter out of range");
    *hyper_fields(params.hyper, i) = static_cast<int>(v);
  }
  if (auto err = validate(params.hyper)) throw *err;
  const auto specs = architecture(params.hyper);

  const std::uint32_t count = in.u32("tensor count");
  if (count != specs.size()) {
    throw Error(ErrorCode::kShapeMismatch, "file has " + std::to_string(count) +
                                               " tensors, expected " +
                                               std::to_string(specs.size()));
  }
  for (std::uint32_t n = 0; n < count; ++n) {
    const std::uint32_t name_length = in.u32("tensor name");
    if (name_length > kMaxNameLength) {
      throw Error(ErrorCode::kShapeMismatch, "tensor name too long");
    }
    const auto name_bytes = in.take(name_length, "tensor name");
    std::string name(name_bytes.begin(), name_bytes.end());
    const std::uint32_t rank = in.u32("tensor rank");
    if (rank > kMaxRank) throw Error(ErrorCode::kShapeMismatch, "tensor " + name + " rank");
    Tensor t;
    for (std::uint32_t d = 0; d < rank; ++d) {
      t.shape.push_back(static_cast<int>(in.u32("tensor dims")));
    }
    const auto spec = std::find_if(specs.begin(), specs.end(),
                                   [&](const TensorSpec& s) { return s.name == name; });
    if (spec == specs.end()) throw Error(ErrorCode::kShapeMismatch, "unknown tensor " + name);
    if (spec->shape != t.shape) {
      throw Error(ErrorCode::kShapeMismatch, "tensor " + name + " has the wrong shape");
    }
    if (params.tensors.count(name) != 0) {
      throw Error(ErrorCode::kShapeMismatch, "duplicate tensor " + name);
    }
    const std::size_t elements = element_count(t.shape);
    const auto raw = in.take(elements * 4, "tensor data");
    t.data.resize(elements);
    for (std::size_t i = 0; i < elements; ++i) {
      const std::uint8_t* b = raw.data() + 4 * i;
      const std::uint32_t bits = static_cast<std::uint32_t>(b[0]) |
                                 (static_cast<std::uint32_t>(b[1]) << 8) |
                                 (static_cast<std::uint32_t>(b[2]) << 16) |
                                 (static_cast<std::uint32_t>(b[3]) << 24);
      t.data[i] = std::bit_cast<float>(bits);
    }
    params.tensors.emplace(std::move(name), std::move(t));
  }
  if (!in.at_end()) throw Error(ErrorCode::kShapeMismatch, "trailing bytes after last tensor");
  if (auto err = validate(params)) throw *err;
  return params;
}

void save_weights(const std::filesystem::path& path, const ModelParams& params) {
  write_file_atomic(path, encode_weights(params));
}

ModelParams load_weights(const std::filesystem::path& path) {
  return decode_weights(read_file(path));
}

}  // namespace svdlut::net
