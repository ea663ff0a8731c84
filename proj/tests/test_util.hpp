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
#include <cstdint>
#include <filesystem>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <unistd.h>

#include "svdlut/types.hpp"

namespace testing_util {

using namespace svdlut;

class Rng {
 public:
  explicit Rng(std::uint32_t seed) : gen_(seed) {}
  float uniform(float lo = 0.0f, float hi = 1.0f) {
    return std::uniform_real_distribution<float>(lo, hi)(gen_);
  }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  std::vector<float> vec(std::size_t n, float lo = 0.0f, float hi = 1.0f) {
    std::vector<float> v(n);
    for (float& x : v) x = uniform(lo, hi);
    return v;
  }

 private:
  std::mt19937 gen_;
};

inline Image rand_image(Rng& rng, int w, int h) {
  return Image(w, h, rng.vec(3 * static_cast<std::size_t>(w) * h));
}

inline Lut2DSet rand_luts(Rng& rng, int d) {
  return Lut2DSet(d, rng.vec(9 * static_cast<std::size_t>(d) * d, -0.5f, 1.5f));
}

inline Lut3D rand_lut3d(Rng& rng, int d) {
  return Lut3D(d, rng.vec(3 * static_cast<std::size_t>(d) * d * d));
}

inline LutWeights rand_lut_weights(Rng& rng) {
  LutWeights w;
  for (auto& pw : w) {
    for (float& x : pw.w) x = rng.uniform(-1.0f, 1.0f);
    pw.bias = rng.uniform(-0.2f, 0.2f);
  }
  return w;
}

inline GridSet rand_grids(Rng& rng, int k, int d) {
  return GridSet(k, d, rng.vec(3 * static_cast<std::size_t>(k) * d * d, -0.3f, 0.3f));
}

inline GridWeights rand_grid_weights(Rng& rng, int k) {
  GridWeights w(k);
  for (auto& pw : w) {
    for (float& x : pw.w) x = rng.uniform(-1.0f, 1.0f);
    pw.bias = rng.uniform(-0.1f, 0.1f);
  }
  return w;
}

inline double max_diff(std::span<const float> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_diff(std::span<const float> a, std::span<const float> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, std::abs(static_cast<double>(a[i]) - b[i]));
  }
  return m;
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("svdlut_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

}  // namespace testing_util
