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
#include <thread>
#include <vector>

namespace svdlut::detail {

// Calls fn(row_begin, row_end) over disjoint bands covering [0, rows).
// Band 0 runs on the calling thread.
template <typename Fn>
void for_each_band(int rows, unsigned threads, Fn&& fn) {
  const int bands = std::clamp<int>(static_cast<int>(threads), 1, std::max(rows, 1));
  if (bands == 1) {
    fn(0, rows);
    return;
  }
  const int base = rows / bands;
  const int extra = rows % bands;
  auto band_start = [&](int b) { return b * base + std::min(b, extra); };

  std::vector<std::jthread> workers;
  workers.reserve(bands - 1);
  for (int b = 1; b < bands; ++b) {
    workers.emplace_back([&fn, begin = band_start(b), end = band_start(b + 1)] {
      fn(begin, end);
    });
  }
  fn(0, band_start(1));
}

}  // namespace svdlut::detail
