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

#include "svdlut/image_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "svdlut/file_io.hpp"

namespace svdlut {
namespace {

class HeaderReader {
 public:
  explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  // Next unsigned decimal field, skipping whitespace and '#' comments.
  long next_number(const char* what) {
    skip_separators();
    if (pos_ >= bytes_.size()) {
      throw Error(ErrorCode::kTruncatedFile, std::string("header ends before ") + what);
    }
    if (!std::isdigit(bytes_[pos_])) {
      throw Error(ErrorCode::kParseError, std::string("expected a number for ") + what);
    }
    long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > 1'000'000'000) {
        throw Error(ErrorCode::kParseError, std::string(what) + " is too large");
      }
      ++pos_;
    }
    return value;
  }

  // Exactly one whitespace byte separates the header from the raster.
  std::size_t raster_offset() {
    if (pos_ >= bytes_.size()) {
      throw Error(ErrorCode::kTruncatedFile, "missing raster");
    }
    if (!std::isspace(bytes_[pos_])) {
      throw Error(ErrorCode::kParseError, "header must end with whitespace");
    }
    return pos_ + 1;
  }

  void skip(std::size_t n) { pos_ += n; }

 private:
  void skip_separators() {
    while (pos_ < bytes_.size()) {
      if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

void append_header(std::vector<std::uint8_t>& out, const char* magic, int width, int height,
                   int maxval) {
  const std::string header = std::string(magic) + "\n" + std::to_string(width) + " " +
                             std::to_string(height) + "\n" + std::to_string(maxval) + "\n";
  out.insert(out.end(), header.begin(), header.end());
}

}  // namespace

std::uint16_t quantize(float value, std::uint16_t maxval) {
  const double clamped = std::clamp(static_cast<double>(value), 0.0, 1.0);
  return static_cast<std::uint16_t>(std::floor(clamped * maxval + 0.5));
}

Image decode_ppm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '6') {
    throw Error(ErrorCode::kBadMagic, "not a binary PPM (P6) file");
  }
  HeaderReader reader(bytes);
  reader.skip(2);
  const long width = reader.next_number("width");
  const long height = reader.next_number("height");
  const long maxval = reader.next_number("maxval");
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::kParseError, "image dimensions must be positive");
  }
  if (maxval != 255 && maxval != 65535) {
    throw Error(ErrorCode::kBadMaxval,
                "maxval " + std::to_string(maxval) + " unsupported (255 or 65535 only)");
  }
  const std::size_t offset = reader.raster_offset();
  const std::size_t bytes_per_sample = maxval == 255 ? 1 : 2;
  const std::size_t pixels = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  const std::size_t needed = pixels * kNumChannels * bytes_per_sample;
  if (bytes.size() - offset < needed) {
    throw Error(ErrorCode::kTruncatedFile, "raster holds " + std::to_string(bytes.size() - offset) +
                                               " bytes, expected " + std::to_string(needed));
  }

  std::vector<float> planar(pixels * kNumChannels);
  const float scale = static_cast<float>(maxval);
  const std::uint8_t* src = bytes.data() + offset;
  for (std::size_t i = 0; i < pixels; ++i) {
    for (int c = 0; c < kNumChannels; ++c) {
      unsigned sample;
      if (bytes_per_sample == 1) {
        sample = *src++;
      } else {
        sample = (static_cast<unsigned>(src[0]) << 8) | src[1];
        src += 2;
      }
      planar[c * pixels + i] = static_cast<float>(sample) / scale;
    }
  }
  return Image(static_cast<int>(width), static_cast<int>(height), std::move(planar));
}

std::vector<std::uint8_t> encode_ppm(const Image& image, BitDepth depth) {
  const std::uint16_t maxval = depth == BitDepth::k8 ? 255 : 65535;
  std::vector<std::uint8_t> out;
  append_header(out, "P6", image.width(), image.height(), maxval);
  const std::size_t pixels = image.pixel_count();
  out.reserve(out.size() + pixels * kNumChannels * (depth == BitDepth::k8 ? 1 : 2));
  for (std::size_t i = 0; i < pixels; ++i) {
    for (int c = 0; c < kNumChannels; ++c) {
      const std::uint16_t q = quantize(image.channel(c)[i], maxval);
      if (depth == BitDepth::k8) {
        out.push_back(static_cast<std::uint8_t>(q));
      } else {
        out.push_back(static_cast<std::uint8_t>(q >> 8));
        out.push_back(static_cast<std::uint8_t>(q & 0xff));
      }
    }
  }
  return out;
}

Image load_ppm(const std::filesystem::path& path) { return decode_ppm(read_file(path)); }

void save_ppm(const std::filesystem::path& path, const Image& image, BitDepth depth) {
  write_file_atomic(path, encode_ppm(image, depth));
}

std::vector<std::uint8_t> encode_pgm16(std::span<const std::uint16_t> levels, int width,
                                       int height) {
  if (width < 1 || height < 1 ||
      levels.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw Error(ErrorCode::kDimensionMismatch, "PGM levels do not match dimensions");
  }
  std::vector<std::uint8_t> out;
  append_header(out, "P5", width, height, 65535);
  for (std::uint16_t v : levels) {
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
  }
  return out;
}

}  // namespace svdlut
