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
#include <string>
#include <string_view>
#include <vector>

#include "svdlut/network.hpp"

namespace svdlut::bench {

enum class Pipeline { kNaive, kFused };

std::string_view to_string(Pipeline pipeline);

struct Resolution {
  int width = 0;
  int height = 0;

  std::string label() const;
};

inline constexpr Resolution k480p{854, 480};
inline constexpr Resolution k4K{3840, 2160};

// Accepts "WxH", "480p" and "4k". Throws kBadResolution.
Resolution parse_resolution(std::string_view text);

// Stage names as reported.
inline constexpr std::string_view kBackbone = "backbone";
inline constexpr std::string_view kGridGen = "grid_weight_gen";
inline constexpr std::string_view kLutGen = "lut_weight_gen";
inline constexpr std::string_view kSlicing = "slicing";
inline constexpr std::string_view kLutTransform = "lut_transform";
inline constexpr std::string_view kFusion = "fusion";
inline constexpr std::string_view kFusedStage = "slicing_lut_transform";
// Everything that touches full-resolution pixels: slicing + LUT transform +
// fusion for the naive pipeline, the fused stage otherwise.
inline constexpr std::string_view kPerPixel = "per_pixel";
inline constexpr std::string_view kTotal = "total";

struct StageTiming {
  std::string stage;
  double median_ms = 0.0;
  double p10_ms = 0.0;
  double p90_ms = 0.0;
};

struct ResolutionResult {
  Resolution resolution;
  std::vector<StageTiming> stages;
  // Fused vs naive output on this resolution's image, checked once.
  double max_abs_diff = 0.0;

  const StageTiming& stage(std::string_view name) const;
};

struct BenchReport {
  Pipeline pipeline = Pipeline::kFused;
  int reps = 0;
  unsigned threads = 1;
  std::vector<ResolutionResult> results;
};

struct BenchOptions {
  std::vector<Resolution> resolutions{k480p, k4K};
  int reps = 10;
  Pipeline pipeline = Pipeline::kFused;
  unsigned threads = 1;
  std::uint64_t image_seed = 1;
};

inline constexpr double kEquivalenceTolerance = 1e-5;

// Times every stage `reps` times per resolution after reps/10 (at least one)
// warm-up runs, on a seeded random image. Image synthesis is not timed.
// Throws kBadResolution for images under 2x2, kBadHyperparameter for
// reps < 3, and kDimensionMismatch if the fused and naive outputs disagree by
// more than kEquivalenceTolerance.
BenchReport run_suite(const net::ModelParams& model, const BenchOptions& options);

inline constexpr std::string_view kCsvHeader =
    "pipeline,resolution,stage,median_ms,p10_ms,p90_ms,reps,threads\n";

// Rows only; prepend kCsvHeader once.
std::string to_csv_rows(const BenchReport& report);

}  // namespace svdlut::bench
