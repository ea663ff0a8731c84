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

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

#include "svdlut/types.hpp"

namespace svdlut {

// Text LUT files.
//
//   SVDLUT2D v1            SVDLUT3D v1
//   <d>                    <d>
//   plane r rg             cube r
//   <d rows of d values>   <d*d rows of d values, b fastest>
//   ... (9 planes, c in r,g,b outer, pair in rg,rb,gb inner)
//   weights r <w_rg> <w_rb> <w_gb> <bias>
//   weights g ...
//   weights b ...
//
// Values are printed with 9 significant digits, which round-trips float.
struct Lut2DFile {
  Lut2DSet luts;
  LutWeights weights;
};

using LutFile = std::variant<Lut2DFile, Lut3D>;

std::string format_lut(const Lut2DSet& luts, const LutWeights& weights);
std::string format_lut(const Lut3D& lut);

// Throws kParseError on malformed text and validation errors on bad values.
LutFile parse_lut(std::string_view text);

LutFile load_lut(const std::filesystem::path& path);
void save_lut(const std::filesystem::path& path, const LutFile& lut);

}  // namespace svdlut
