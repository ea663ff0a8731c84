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

#include "svdlut/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>

#include "svdlut/svd.hpp"
#include "svdlut/synthetic.hpp"
#include "svdlut/transform.hpp"

namespace svdlut::bench {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start, Clock::time_point end) {
  return std::chrono::duration<double, std::milli>(end - start).count();
}

// Linear interpolation between closest ranks.
double percentile(std::vector<double> samples, double q) {
  std::sort(samples.begin(), samples.end());
  const double pos = q * static_cast<double>(samples.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, samples.size() - 1);
  return samples[lo] + (pos - static_cast<double>(lo)) * (samples[hi] - samples[lo]);
}

class StageClock {
 public:
  void record(std::string_view stage, double ms) {
    auto& samples = samples_[std::string(stage)];
    if (samples.empty()) order_.emplace_back(stage);
    samples.push_back(ms);
  }

  std::vector<StageTiming> summarize() const {
    std::vector<StageTiming> out;
    for (const auto& name : order_) {
      const auto& samples = samples_.at(name);
      out.push_back({name, percentile(samples, 0.5), percentile(samples, 0.1),
                     percentile(samples, 0.9)});
    }
    return out;
  }

 private:
  std::vector<std::string> order_;
  std::map<std::string, std::vector<double>> samples_;
};

// One end-to-end run; records nothing when clock is null.
Image run_once(const Image& image, const net::ModelParams& model, Pipeline pipeline,
               unsigned threads, StageClock* clock) {
  auto record = [&](std::string_view stage, Clock::time_point a, Clock::time_point b) {
    if (clock) clock->record(stage, elapsed_ms(a, b));
  };

  const auto t0 = Clock::now();
  const auto context = net::backbone_forward(image, model);
  const auto t1 = Clock::now();
  const auto grids = net::generate_grids(context, model);
  const auto t2 = Clock::now();
  const auto lut_out = net::generate_luts(context, model);
  const Lut2DSet luts = svd::reconstruct_luts(lut_out.factors);
  const auto t3 = Clock::now();
  record(kBackbone, t0, t1);
  record(kGridGen, t1, t2);
  record(kLutGen, t2, t3);

  if (pipeline == Pipeline::kFused) {
    Image out = fused_enhance(image, luts, lut_out.weights, grids.grids, grids.weights, threads);
    const auto t4 = Clock::now();
    record(kFusedStage, t3, t4);
    record(kPerPixel, t3, t4);
    record(kTotal, t0, t4);
    return out;
  }

  const SpatialFeatureMap features = slice_grid2d(image, grids.grids, grids.weights, threads);
  const auto t4 = Clock::now();
  Image transformed = apply_lut2d(image, luts, lut_out.weights, threads);
  const auto t5 = Clock::now();
  Image out = fuse_features(std::move(transformed), features, threads);
  const auto t6 = Clock::now();
  record(kSlicing, t3, t4);
  record(kLutTransform, t4, t5);
  record(kFusion, t5, t6);
  record(kPerPixel, t3, t6);
  record(kTotal, t0, t6);
  return out;
}

double max_abs_diff(const Image& a, const Image& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    worst = std::max(worst, std::abs(static_cast<double>(a.data()[i]) - b.data()[i]));
  }
  return worst;
}

}  // namespace

std::string_view to_string(Pipeline pipeline) {
  return pipeline == Pipeline::kFused ? "fused" : "naive";
}

std::string Resolution::label() const {
  return std::to_string(width) + "x" + std::to_string(height);
}

Resolution parse_resolution(std::string_view text) {
  if (text == "480p") return k480p;
  if (text == "4k" || text == "4K") return k4K;
  const auto x = text.find('x');
  auto parse_int = [&](std::string_view part) {
    if (part.empty() || part.size() > 6 ||
        !std::all_of(part.begin(), part.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
      throw Error(ErrorCode::kBadResolution, "bad resolution '" + std::string(text) + "'");
    }
    return std::stoi(std::string(part));
  };
  if (x == std::string_view::npos) {
    throw Error(ErrorCode::kBadResolution, "bad resolution '" + std::string(text) + "'");
  }
  const Resolution res{parse_int(text.substr(0, x)), parse_int(text.substr(x + 1))};
  if (res.width < 2 || res.height < 2) {
    throw Error(ErrorCode::kBadResolution, "resolution must be at least 2x2");
  }
  return res;
}

const StageTiming& ResolutionResult::stage(std::string_view name) const {
  const auto it = std::find_if(stages.begin(), stages.end(),
                               [&](const StageTiming& s) { return s.stage == name; });
  if (it == stages.end()) {
    throw Error(ErrorCode::kDimensionMismatch, "no stage '" + std::string(name) + "'");
  }
  return *it;
}

BenchReport run_suite(const net::ModelParams& model, const BenchOptions& options) {
  if (options.reps < 3) {
    throw Error(ErrorCode::kBadHyperparameter, "benchmark needs at least 3 repetitions");
  }
  if (options.resolutions.empty()) {
    throw Error(ErrorCode::kBadResolution, "no resolutions requested");
  }
  for (const auto& res : options.resolutions) {
    if (res.width < 2 || res.height < 2) {
      throw Error(ErrorCode::kBadResolution, "resolution " + res.label() + " is below 2x2");
    }
  }
  if (auto err = net::validate(model)) throw *err;

  BenchReport report;
  report.pipeline = options.pipeline;
  report.reps = options.reps;
  report.threads = std::max(1u, options.threads);
  const int warmup = std::max(1, options.reps / 10);

  for (const auto& res : options.resolutions) {
    const Image image = random_image(res.width, res.height,
                                     options.image_seed + static_cast<std::uint64_t>(res.width) *
                                                              100003u +
                                                          static_cast<std::uint64_t>(res.height));
    ResolutionResult result;
    result.resolution = res;

    const Image fused = run_once(image, model, Pipeline::kFused, report.threads, nullptr);
    const Image naive = run_once(image, model, Pipeline::kNaive, report.threads, nullptr);
    result.max_abs_diff = max_abs_diff(fused, naive);
    if (!(result.max_abs_diff <= kEquivalenceTolerance)) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "fused and naive outputs disagree at " + res.label());
    }

    for (int i = 0; i < warmup; ++i) {
      run_once(image, model, options.pipeline, report.threads, nullptr);
    }
    StageClock clock;
    for (int i = 0; i < options.reps; ++i) {
      run_once(image, model, options.pipeline, report.threads, &clock);
    }
    result.stages = clock.summarize();
    report.results.push_back(std::move(result));
  }
  return report;
}

std::string to_csv_rows(const BenchReport& report) {
  std::string out;
  char buf[256];
  for (const auto& result : report.results) {
    for (const auto& s : result.stages) {
      std::snprintf(buf, sizeof(buf), "%s,%s,%s,%.4f,%.4f,%.4f,%d,%u\n",
                    std::string(to_string(report.pipeline)).c_str(),
                    result.resolution.label().c_str(), s.stage.c_str(), s.median_ms, s.p10_ms,
                    s.p90_ms, report.reps, report.threads);
      out += buf;
    }
  }
  return out;
}

}  // namespace svdlut::bench
