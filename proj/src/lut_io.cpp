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

#include "svdlut/lut_io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <vector>

#include "svdlut/file_io.hpp"

namespace svdlut {
namespace {

constexpr std::string_view kMagic2D = "SVDLUT2D";
constexpr std::string_view kMagic3D = "SVDLUT3D";
constexpr std::string_view kVersion = "v1";
constexpr const char* kChannelNames[kNumChannels] = {"r", "g", "b"};
constexpr const char* kPairNames[kNumPairs] = {"rg", "rb", "gb"};

void append_value(std::string& out, float v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", static_cast<double>(v));
  out += buf;
}

void append_rows(std::string& out, std::span<const float> values, int row_length) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    append_value(out, values[i]);
    out += ((i + 1) % row_length == 0) ? '\n' : ' ';
  }
}

class Tokens {
 public:
  explicit Tokens(std::string_view text) : in_(std::string(text)) {}

  std::string next(const char* what) {
    std::string tok;
    if (!(in_ >> tok)) {
      throw Error(ErrorCode::kParseError, std::string("unexpected end of file, expected ") + what);
    }
    return tok;
  }

  void expect(std::string_view literal) {
    const std::string tok = next(std::string(literal).c_str());
    if (tok != literal) {
      throw Error(ErrorCode::kParseError,
                  "expected '" + std::string(literal) + "', found '" + tok + "'");
    }
  }

  float next_float() {
    const std::string tok = next("a value");
    char* end = nullptr;
    errno = 0;
    const float v = std::strtof(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size() || (errno == ERANGE && std::isinf(v))) {
      throw Error(ErrorCode::kParseError, "bad value '" + tok + "'");
    }
    return v;
  }

  int next_dim() {
    const std::string tok = next("table size");
    char* end = nullptr;
    const long v = std::strtol(tok.c_str(), &end, 10);
    if (end != tok.c_str() + tok.size() || v < 2 || v > 1024) {
      throw Error(ErrorCode::kParseError, "bad table size '" + tok + "'");
    }
    return static_cast<int>(v);
  }

  void expect_end() {
    std::string tok;
    if (in_ >> tok) throw Error(ErrorCode::kParseError, "trailing data '" + tok + "'");
  }

 private:
  std::istringstream in_;
};

Lut2DFile parse_2d(Tokens& tokens) {
  const int dim = tokens.next_dim();
  std::vector<float> planes(static_cast<std::size_t>(kNumChannels) * kNumPairs * dim * dim);
  std::size_t pos = 0;
  for (int c = 0; c < kNumChannels; ++c) {
    for (int p = 0; p < kNumPairs; ++p) {
      tokens.expect("plane");
      tokens.expect(kChannelNames[c]);
      tokens.expect(kPairNames[p]);
      for (int i = 0; i < dim * dim; ++i) planes[pos++] = tokens.next_float();
    }
  }
  LutWeights weights{};
  for (int c = 0; c < kNumChannels; ++c) {
    tokens.expect("weights");
    tokens.expect(kChannelNames[c]);
    for (float& w : weights[c].w) w = tokens.next_float();
    weights[c].bias = tokens.next_float();
  }
  tokens.expect_end();
  if (auto err = validate(weights)) throw *err;
  return {Lut2DSet(dim, std::move(planes)), weights};
}

Lut3D parse_3d(Tokens& tokens) {
  const int dim = tokens.next_dim();
  const std::size_t cube = static_cast<std::size_t>(dim) * dim * dim;
  std::vector<float> tables(kNumChannels * cube);
  std::size_t pos = 0;
  for (int c = 0; c < kNumChannels; ++c) {
    tokens.expect("cube");
    tokens.expect(kChannelNames[c]);
    for (std::size_t i = 0; i < cube; ++i) tables[pos++] = tokens.next_float();
  }
  tokens.expect_end();
  return Lut3D(dim, std::move(tables));
}

}  // namespace

std::string format_lut(const Lut2DSet& luts, const LutWeights& weights) {
  const int dim = luts.dim();
  std::string out = std::string(kMagic2D) + " " + std::string(kVersion) + "\n" +
                    std::to_string(dim) + "\n";
  for (int c = 0; c < kNumChannels; ++c) {
    for (int p = 0; p < kNumPairs; ++p) {
      out += std::string("plane ") + kChannelNames[c] + " " + kPairNames[p] + "\n";
      append_rows(out, luts.plane(c, static_cast<LutPair>(p)), dim);
    }
  }
  for (int c = 0; c < kNumChannels; ++c) {
    out += std::string("weights ") + kChannelNames[c];
    for (float w : weights[c].w) {
      out += ' ';
      append_value(out, w);
    }
    out += ' ';
    append_value(out, weights[c].bias);
    out += '\n';
  }
  return out;
}

std::string format_lut(const Lut3D& lut) {
  const int dim = lut.dim();
  std::string out = std::string(kMagic3D) + " " + std::string(kVersion) + "\n" +
                    std::to_string(dim) + "\n";
  for (int c = 0; c < kNumChannels; ++c) {
    out += std::string("cube ") + kChannelNames[c] + "\n";
    append_rows(out, lut.cube(c), dim);
  }
  return out;
}

LutFile parse_lut(std::string_view text) {
  Tokens tokens(text);
  const std::string magic = tokens.next("header");
  if (magic != kMagic2D && magic != kMagic3D) {
    throw Error(ErrorCode::kBadMagic, "unknown LUT header '" + magic + "'");
  }
  const std::string version = tokens.next("version");
  if (version != kVersion) {
    throw Error(ErrorCode::kUnsupportedVersion, "LUT version '" + version + "'");
  }
  if (magic == kMagic2D) return parse_2d(tokens);
  return parse_3d(tokens);
}

LutFile load_lut(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  return parse_lut(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

void save_lut(const std::filesystem::path& path, const LutFile& lut) {
  const std::string text = std::visit(
      [](const auto& value) {
        if constexpr (std::is_same_v<std::decay_t<decltype(value)>, Lut3D>) {
          return format_lut(value);
        } else {
          return format_lut(value.luts, value.weights);
        }
      },
      lut);
  write_file_atomic(path, text);
}

}  // namespace svdlut
