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

#include "svdlut/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "svdlut/analysis.hpp"
#include "svdlut/bench.hpp"
#include "svdlut/file_io.hpp"
#include "svdlut/image_io.hpp"
#include "svdlut/lut_io.hpp"
#include "svdlut/network.hpp"
#include "svdlut/svd.hpp"
#include "svdlut/transform.hpp"

namespace svdlut::cli {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

constexpr double kVerifyTolerance = 1e-5;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

double max_abs_diff(const Image& a, const Image& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    worst = std::max(worst, std::abs(static_cast<double>(a.data()[i]) - b.data()[i]));
  }
  return worst;
}

struct EnhanceArgs {
  std::string input;
  std::string output;
  std::string weights;
  std::string lut;
  std::optional<std::uint64_t> seed;
  bool naive = false;
  bool fused = false;
  bool verify = false;
  bool sixteen_bit = false;
  unsigned threads = 1;
};

void cmd_enhance(const EnhanceArgs& a, std::ostream& out) {
  const int sources = !a.weights.empty() + !a.lut.empty() + a.seed.has_value();
  if (sources != 1) throw UsageError("enhance needs exactly one of --weights, --lut, --seed");

  auto t = Clock::now();
  const Image input = load_ppm(a.input);
  const double load_ms = ms_since(t);

  t = Clock::now();
  Image result(1, 1);
  std::optional<double> verify_diff;
  if (!a.lut.empty()) {
    const LutFile lut = load_lut(a.lut);
    if (const auto* lut3 = std::get_if<Lut3D>(&lut)) {
      result = apply_lut3d(input, *lut3, a.threads);
    } else {
      const auto& lut2 = std::get<Lut2DFile>(lut);
      result = apply_lut2d(input, lut2.luts, lut2.weights, a.threads);
    }
  } else {
    const net::ModelParams model =
        a.seed ? net::random_init(*a.seed) : net::load_weights(a.weights);
    const net::Prediction p = net::predict(input, model);
    const bool use_naive = a.naive && !a.fused;
    result = use_naive ? naive_enhance(input, p.luts, p.lut_weights, p.grids, p.grid_weights,
                                       a.threads)
                       : fused_enhance(input, p.luts, p.lut_weights, p.grids, p.grid_weights,
                                       a.threads);
    if (a.verify) {
      const Image other =
          use_naive ? fused_enhance(input, p.luts, p.lut_weights, p.grids, p.grid_weights,
                                    a.threads)
                    : naive_enhance(input, p.luts, p.lut_weights, p.grids, p.grid_weights,
                                    a.threads);
      verify_diff = max_abs_diff(result, other);
    }
  }
  const double process_ms = ms_since(t);

  if (verify_diff && !(*verify_diff <= kVerifyTolerance)) {
    throw Error(ErrorCode::kDimensionMismatch,
                "fused and naive outputs differ by " + std::to_string(*verify_diff));
  }

  t = Clock::now();
  save_ppm(a.output, result, a.sixteen_bit ? BitDepth::k16 : BitDepth::k8);
  const double save_ms = ms_since(t);

  out << "load_ms " << fixed(load_ms, 3) << "\nprocess_ms " << fixed(process_ms, 3)
      << "\nsave_ms " << fixed(save_ms, 3) << '\n';
  if (verify_diff) out << "verify max_abs_diff " << *verify_diff << '\n';
}

struct SvdArgs {
  std::string lut;
  std::string output;
  std::string errors;
  int rank = 8;
};

void cmd_svd(const SvdArgs& a, std::ostream& out) {
  const LutFile file = load_lut(a.lut);
  const auto* lut2 = std::get_if<Lut2DFile>(&file);
  if (!lut2) throw Error(ErrorCode::kParseError, "svd needs a 2D LUT file");

  const SvdLut truncated = svd::truncate_luts(svd::decompose_luts(lut2->luts), a.rank);
  const Lut2DSet rebuilt = svd::reconstruct_luts(truncated);

  static constexpr const char* kChannel[] = {"r", "g", "b"};
  static constexpr const char* kPair[] = {"rg", "rb", "gb"};
  std::string csv = "channel,pair,rank,frobenius_error\n";
  for (int c = 0; c < kNumChannels; ++c) {
    for (int p = 0; p < kNumPairs; ++p) {
      const auto pair = static_cast<LutPair>(p);
      const double e = svd::frobenius_distance(lut2->luts.plane(c, pair), rebuilt.plane(c, pair));
      char buf[96];
      std::snprintf(buf, sizeof(buf), "%s,%s,%d,%.9g\n", kChannel[c], kPair[p], a.rank, e);
      csv += buf;
    }
  }

  save_lut(a.output, Lut2DFile{rebuilt, lut2->weights});
  const fs::path errors = a.errors.empty() ? fs::path(a.output + ".errors.csv") : fs::path(a.errors);
  write_file_atomic(errors, csv);
  out << csv;
}

struct AnalyzeArgs {
  std::vector<std::string> images;
  std::string out_dir;
  int dim = 33;
};

void cmd_analyze(const AnalyzeArgs& a, std::ostream& out) {
  if (a.images.empty()) throw UsageError("analyze needs at least one image");
  if (a.dim < 2) throw Error(ErrorCode::kBadVertexCount, "--d must be at least 2");

  analysis::OccurrenceMap occurrences(a.dim);
  std::string csv = "image,mode,dim,utilization_percent\n";
  static constexpr std::pair<analysis::LutMode, const char*> kModes[] = {
      {analysis::LutMode::k1D, "1D"},
      {analysis::LutMode::k2D, "2D"},
      {analysis::LutMode::k3D, "3D"}};
  for (const auto& path : a.images) {
    const Image image = load_ppm(path);
    occurrences.ingest(image);
    for (const auto& [mode, label] : kModes) {
      char buf[64];
      std::snprintf(buf, sizeof(buf), ",%s,%d,%.6f\n", label, a.dim,
                    analysis::utilization_rate(image, a.dim, mode));
      csv += path + buf;
    }
  }

  const fs::path dir(a.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIoError, "cannot create " + dir.string() + ": " + ec.message());
  write_file_atomic(dir / "utilization.csv", csv);
  static constexpr std::pair<LutPair, const char*> kPairs[] = {
      {LutPair::kRG, "occurrence_rg.pgm"},
      {LutPair::kRB, "occurrence_rb.pgm"},
      {LutPair::kGB, "occurrence_gb.pgm"}};
  for (const auto& [pair, name] : kPairs) {
    write_file_atomic(dir / name, analysis::heatmap_pgm(occurrences.projection(pair), a.dim));
  }
  out << csv;
}

struct BenchArgs {
  std::vector<std::string> resolutions{"480p", "4k"};
  std::string pipeline = "fused";
  std::string weights;
  std::string csv;
  std::uint64_t seed = 0;
  int reps = 10;
  unsigned threads = 1;
};

void cmd_bench(const BenchArgs& a, std::ostream& out) {
  if (a.reps < 3) throw UsageError("--reps must be at least 3");
  bench::BenchOptions options;
  options.resolutions.clear();
  for (const auto& r : a.resolutions) options.resolutions.push_back(bench::parse_resolution(r));
  options.reps = a.reps;
  options.threads = a.threads;

  std::vector<bench::Pipeline> pipelines;
  if (a.pipeline == "naive" || a.pipeline == "both") pipelines.push_back(bench::Pipeline::kNaive);
  if (a.pipeline == "fused" || a.pipeline == "both") pipelines.push_back(bench::Pipeline::kFused);

  const net::ModelParams model =
      a.weights.empty() ? net::random_init(a.seed) : net::load_weights(a.weights);
  std::string csv(bench::kCsvHeader);
  for (const auto pipeline : pipelines) {
    options.pipeline = pipeline;
    csv += bench::to_csv_rows(bench::run_suite(model, options));
  }
  if (!a.csv.empty()) write_file_atomic(a.csv, csv);
  out << csv;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"SVD-compressed 2D LUT and bilateral grid image enhancement"};
  app.require_subcommand(1);

  EnhanceArgs enhance;
  auto* enhance_cmd = app.add_subcommand("enhance", "Enhance a PPM image");
  enhance_cmd->add_option("input", enhance.input, "Input PPM")->required();
  enhance_cmd->add_option("output", enhance.output, "Output PPM")->required();
  enhance_cmd->add_option("--weights", enhance.weights, "SVDW weight file");
  enhance_cmd->add_option("--lut", enhance.lut, "Static 2D or 3D LUT file");
  enhance_cmd->add_option("--seed", enhance.seed, "Use randomly initialized weights");
  auto* fused_flag = enhance_cmd->add_flag("--fused", enhance.fused, "Single-pass kernel (default)");
  enhance_cmd->add_flag("--naive", enhance.naive, "Materializing pipeline")->excludes(fused_flag);
  enhance_cmd->add_flag("--verify", enhance.verify, "Check fused against naive output");
  enhance_cmd->add_flag("--16bit", enhance.sixteen_bit, "Write 16-bit samples");
  enhance_cmd->add_option("--threads", enhance.threads)->check(CLI::Range(1u, 1024u));

  SvdArgs svd_args;
  auto* svd_cmd = app.add_subcommand("svd", "Truncate a 2D LUT to a given rank");
  svd_cmd->add_option("lut", svd_args.lut, "Input 2D LUT file")->required();
  svd_cmd->add_option("output", svd_args.output, "Reconstructed LUT file")->required();
  svd_cmd->add_option("--rank", svd_args.rank, "Singular values kept per plane")->capture_default_str();
  svd_cmd->add_option("--errors", svd_args.errors, "Per-plane error CSV (default <output>.errors.csv)");

  AnalyzeArgs analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "LUT utilization and occurrence heatmaps");
  analyze_cmd->add_option("images", analyze.images, "Input PPM images");
  analyze_cmd->add_option("--d", analyze.dim, "LUT vertices per axis")->capture_default_str();
  analyze_cmd->add_option("--out", analyze.out_dir, "Output directory")->required();

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand("bench", "Stage-wise runtime benchmark");
  bench_cmd->add_option("--res", bench_args.resolutions, "WxH, 480p or 4k")->capture_default_str();
  bench_cmd->add_option("--reps", bench_args.reps, "Timed repetitions (>= 3)")->capture_default_str();
  bench_cmd->add_option("--pipeline", bench_args.pipeline, "naive, fused or both")->capture_default_str()
      ->check(CLI::IsMember({"naive", "fused", "both"}));
  bench_cmd->add_option("--weights", bench_args.weights, "SVDW weight file");
  bench_cmd->add_option("--seed", bench_args.seed, "Seed for random weights")->capture_default_str();
  bench_cmd->add_option("--csv", bench_args.csv, "Also write the CSV here");
  bench_cmd->add_option("--threads", bench_args.threads)->check(CLI::Range(1u, 1024u));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*enhance_cmd) cmd_enhance(enhance, out);
    if (*svd_cmd) cmd_svd(svd_args, out);
    if (*analyze_cmd) cmd_analyze(analyze, out);
    if (*bench_cmd) cmd_bench(bench_args, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace svdlut::cli
