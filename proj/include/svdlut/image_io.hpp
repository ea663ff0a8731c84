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
#include <filesystem>
#include <span>
#include <vector>

#include "svdlut/types.hpp"

namespace svdlut {

enum class BitDepth { k8, k16 };

// Binary PPM (P6) with maxval 255 or 65535; 16-bit samples are big-endian.
// Samples are divided by maxval.
Image decode_ppm(std::span<const std::uint8_t> bytes);

// Clamps to [0, 1] and quantizes with round-half-up.
std::vector<std::uint8_t> encode_ppm(const Image& image, BitDepth depth = BitDepth::k8);

Image load_ppm(const std::filesystem::path& path);
void save_ppm(const std::filesystem::path& path, const Image& image,
              BitDepth depth = BitDepth::k8);

// Round-half-up quantization of a sample clamped to [0, 1].
std::uint16_t quantize(float value, std::uint16_t maxval);

// Binary PGM (P5), maxval 65535, big-endian samples.
std::vector<std::uint8_t> encode_pgm16(std::span<const std::uint16_t> levels, int width,
                                       int height);

}  // namespace svdlut
