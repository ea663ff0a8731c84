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

#include "svdlut/synthetic.hpp"

#include <vector>

namespace svdlut {

Image random_image(int width, int height, std::uint64_t seed) {
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::kDimensionMismatch, "image must be at least 1x1");
  }
  UniformSource source(seed);
  std::vector<float> data(static_cast<std::size_t>(kNumChannels) * width * height);
  for (float& v : data) v = source.next();
  return Image(width, height, std::move(data));
}

}  // namespace svdlut
