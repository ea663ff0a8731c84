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
#include <random>

#include "svdlut/types.hpp"

namespace svdlut {

// Platform-independent uniform floats from a 32-bit Mersenne twister.
class UniformSource {
 public:
  explicit UniformSource(std::uint64_t seed)
      : gen_(static_cast<std::mt19937::result_type>(seed ^ (seed >> 32))) {}

  // [0, 1)
  float next() { return static_cast<float>(gen_() >> 8) * (1.0f / 16777216.0f); }
  float next(float lo, float hi) { return lo + (hi - lo) * next(); }

 private:
  std::mt19937 gen_;
};

// Independent uniform samples in [0, 1).
Image random_image(int width, int height, std::uint64_t seed);

}  // namespace svdlut
