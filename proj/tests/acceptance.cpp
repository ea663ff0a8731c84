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


// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
// failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "alloc_counter.hpp"
#include "reference/reference.hpp"
#include "svdlut/analysis.hpp"
#include "svdlut/bench.hpp"
#include "svdlut/cli.hpp"
#include "svdlut/image_io.hpp"
#include "svdlut/interp.hpp"
#include "svdlut/lut_io.hpp"
#include "svdlut/network.hpp"
#include "svdlut/svd.hpp"
#include "svdlut/synthetic.hpp"
#include "svdlut/transform.hpp"
#include "test_util.hpp"

namespace {

using namespace svdlut;
using namespace testing_util;
using namespace svdlut::analysis;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), format, a, b, c);
  return buf;
}

// 1
Outcome param_budget() {
  const std::size_t n = net::param_count(net::Hyperparams{});
  const std::size_t m = net::param_count(net::random_init(1));
  return {n == 160478 && m == 160478,
          "param_count=" + std::to_string(n) + " materialized=" + std::to_string(m)};
}

// 2
Outcome fused_naive_equivalence() {
  Rng rng(2002);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const auto model = net::random_init(1000 + t);
    const Image img = rand_image(rng, rng.integer(2, 64), rng.integer(2, 64));
    const auto p = net::predict(img, model);
    const Image fused = fused_enhance(img, p.luts, p.lut_weights, p.grids, p.grid_weights);
    const Image naive = naive_enhance(img, p.luts, p.lut_weights, p.grids, p.grid_weights);
    worst = std::max(worst, max_diff(fused.data(), naive.data()));
  }
  return {worst <= 1e-5, fmt("100 trials, max_abs_diff=%.3g (tol 1e-5)", worst)};
}

// 3
Outcome interpolation_oracle() {
  Rng rng(3003);
  double bi = 0.0, tri = 0.0, vertex = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const int d = rng.integer(2, 33);
    const auto plane = rng.vec(d * d, -1.0f, 2.0f);
    const float a = rng.uniform(-0.1f, 1.1f), b = rng.uniform(-0.1f, 1.1f);
    bi = std::max(bi, std::abs(interp::bilinear_sample(plane, d, a, b) - ref::bilinear(plane, d, a, b)));
  }
  for (int t = 0; t < 1000; ++t) {
    const int d = rng.integer(2, 17);
    const auto cube = rng.vec(d * d * d, -1.0f, 2.0f);
    const float r = rng.uniform(-0.1f, 1.1f), g = rng.uniform(-0.1f, 1.1f),
                b = rng.uniform(-0.1f, 1.1f);
    tri = std::max(tri, std::abs(interp::trilinear_sample(cube, d, r, g, b) -
                                 ref::trilinear(cube, d, r, g, b)));
  }
  const int d = 5;
  const auto plane = rng.vec(d * d);
  const auto cube = rng.vec(d * d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const float pi = i / float(d - 1), pj = j / float(d - 1);
      vertex = std::max(vertex, double(std::abs(interp::bilinear_sample(plane, d, pi, pj) -
                                                plane[i * d + j])));
      for (int k = 0; k < d; ++k) {
        const float pk = k / float(d - 1);
        vertex = std::max(vertex, double(std::abs(interp::trilinear_sample(cube, d, pi, pj, pk) -
                                                  cube[(i * d + j) * d + k])));
      }
    }
  return {bi <= 1e-6 && tri <= 1e-6 && vertex <= 1e-6,
          fmt("bilinear=%.3g trilinear=%.3g vertex=%.3g (tol 1e-6)", bi, tri, vertex)};
}

// 4
Outcome identity_fidelity() {
  TempDir dir("acceptance");
  Rng rng(4004);
  Image img(97, 61);
  for (float& v : img.data()) v = rng.integer(0, 255) / 255.0f;
  save_ppm(dir.file("in.ppm"), img);
  save_lut(dir.file("id.lut"), Lut3D::identity(33));

  std::vector<std::string> args{"svdlut", "enhance", dir.file("in.ppm"), dir.file("out.ppm"),
                                "--lut", dir.file("id.lut")};
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  if (code != cli::kExitOk) return {false, "enhance exited " + std::to_string(code) + ": " + err.str()};

  const Image in = load_ppm(dir.file("in.ppm"));
  const Image result = load_ppm(dir.file("out.ppm"));
  int levels = 0;
  for (std::size_t i = 0; i < in.data().size(); ++i) {
    levels = std::max(levels, static_cast<int>(std::lround(std::abs(in.data()[i] - result.data()[i]) * 255.0f)));
  }
  const double float_diff = max_diff(apply_lut3d(in, Lut3D::identity(33)).data(), in.data());
  return {levels <= 1 && float_diff <= 1e-6,
          fmt("max level change=%.0f (tol 1), float max_abs_diff=%.3g (tol 1e-6)", levels, float_diff)};
}

double orthogonality(std::span<const float> m, int d, bool columns) {
  double worst = 0.0;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      double dot = 0.0;
      for (int i = 0; i < d; ++i) {
        dot += columns ? double(m[i * d + a]) * m[i * d + b] : double(m[a * d + i]) * m[b * d + i];
      }
      worst = std::max(worst, std::abs(dot - (a == b ? 1.0 : 0.0)));
    }
  return worst;
}

// 5
Outcome svd_correctness() {
  Rng rng(5005);
  const int d = 33;
  double recon = 0.0, ortho = 0.0, eckart = 0.0;
  int non_monotone = 0;
  for (int t = 0; t < 200; ++t) {
    const auto a = rng.vec(d * d, -1.0f, 1.0f);
    const auto f = svd::jacobi_svd(a, d);
    recon = std::max(recon, max_diff(svd::reconstruct(f), a));
    ortho = std::max({ortho, orthogonality(f.u, d, true), orthogonality(f.vt, d, false)});
    double previous = INFINITY;
    bool monotone = true;
    for (int r = 1; r <= d; ++r) {
      const double e = svd::frobenius_distance(svd::reconstruct(svd::truncate(f, r)), a);
      double tail = 0.0;
      for (int k = r; k < d; ++k) tail += double(f.s[k]) * f.s[k];
      eckart = std::max(eckart, std::abs(e - std::sqrt(tail)));
      // Float round-off slack for ranks whose true error is ~0.
      if (e > previous + 1e-6) monotone = false;
      previous = e;
    }
    if (!monotone) ++non_monotone;
  }
  return {recon <= 1e-5 && ortho <= 1e-5 && eckart <= 1e-4 && non_monotone == 0,
          fmt("recon=%.3g orthogonality=%.3g eckart_young=%.3g", recon, ortho, eckart) +
              " non_monotone_trials=" + std::to_string(non_monotone)};
}

// Increasing on [0, 1], f(0) = 0, f(1) = 1.
float monotone(int family, float p, float x) {
  switch (family) {
    case 0: return std::pow(x, p);
    case 1: return x * x * (3.0f - 2.0f * x);
    case 2: return std::log1p(p * 4.0f * x) / std::log1p(p * 4.0f);
    default: return std::sin(1.5707964f * x);
  }
}

Lut2DSet smooth_luts(Rng& rng, int d) {
  Lut2DSet luts(d);
  for (int c = 0; c < 3; ++c)
    for (LutPair pair : {LutPair::kRG, LutPair::kRB, LutPair::kGB}) {
      auto plane = luts.plane(c, pair);
      std::fill(plane.begin(), plane.end(), 0.0f);
      float total = 0.0f;
      for (int t = 0; t < 4; ++t) {
        const float amp = rng.uniform(0.2f, 1.0f);
        const int fa = rng.integer(0, 3), fb = rng.integer(0, 3);
        const float pa = rng.uniform(0.4f, 2.5f), pb = rng.uniform(0.4f, 2.5f);
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j) {
            plane[i * d + j] += amp * monotone(fa, pa, i / float(d - 1)) *
                                monotone(fb, pb, j / float(d - 1));
          }
        total += amp;
      }
      for (float& v : plane) v /= total;
    }
  return luts;
}

// 6
Outcome svd_operating_point() {
  // Ground truth is the noise-free LUT's output; degradation is the PSNR lost
  // by a truncated noisy LUT relative to the full-rank noisy LUT.
  Rng rng(6006);
  const int d = 33;
  const Lut2DSet clean = smooth_luts(rng, d);
  std::vector<float> values(clean.data().begin(), clean.data().end());
  for (float& v : values) v += rng.uniform(-0.01f, 0.01f);
  const Lut2DSet noisy(d, std::move(values));
  LutWeights w;
  for (auto& pw : w) {
    for (float& x : pw.w) x = rng.uniform(0.2f, 0.5f);
    pw.bias = 0.0f;
  }

  const auto factors = svd::decompose_luts(noisy);
  const Lut2DSet rank8 = svd::reconstruct_luts(svd::truncate_luts(factors, 8));
  const Lut2DSet rank2 = svd::reconstruct_luts(svd::truncate_luts(factors, 2));
  std::vector<Image> images;
  for (int i = 0; i < 10; ++i) images.push_back(rand_image(rng, 64, 64));
  double worst8 = -INFINITY, best_gap = INFINITY, mean8 = 0.0, mean2 = 0.0;
  for (const Image& img : images) {
    const Image truth = apply_lut2d(img, clean, w);
    const double full = psnr(apply_lut2d(img, noisy, w), truth);
    const double loss8 = full - psnr(apply_lut2d(img, rank8, w), truth);
    const double loss2 = full - psnr(apply_lut2d(img, rank2, w), truth);
    worst8 = std::max(worst8, loss8);
    best_gap = std::min(best_gap, loss2 - loss8);
    mean8 += loss8 / 10.0;
    mean2 += loss2 / 10.0;
  }
  // Informational: PSNR against the full-rank output itself.
  const std::vector<int> ranks{2, 8};
  const auto sweep = svd::rank_sweep(noisy, w, images, ranks);
  return {worst8 < 0.5 && best_gap > 0.0,
          fmt("rank8 loss max=%.3f dB mean=%.3f dB, rank2 loss mean=%.3f dB", worst8, mean8, mean2) +
              fmt(", min(rank2-rank8)=%.3f dB", best_gap) +
              fmt("; psnr vs full-rank output: rank2=%.2f dB rank8=%.2f dB", sweep[0].psnr_db,
                  sweep[1].psnr_db)};
}

// 7
Outcome utilization() {
  Image constant(16, 16);
  const float rgb[3] = {0.3f, 0.55f, 0.71f};
  for (int c = 0; c < 3; ++c)
    for (float& v : constant.channel(c)) v = rgb[c];
  const double rate = utilization_rate(constant, 33, LutMode::k3D);
  const double expected = 8.0 / (33.0 * 33.0 * 33.0) * 100.0;

  Image ramp(1024, 4);
  for (int y = 0; y < 4; ++y)
    for (int x = 0; x < 1024; ++x)
      for (int c = 0; c < 3; ++c) ramp.at(c, x, y) = x / 1023.0f;
  const std::vector<Image> images{ramp};
  const auto stats = occurrence_stats(images, 33);
  double worst_fraction = 1.0;
  for (LutPair pair : {LutPair::kRG, LutPair::kRB, LutPair::kGB}) {
    const auto proj = stats.projection(pair);
    double near = 0.0, total = 0.0;
    for (int i = 0; i < 33; ++i)
      for (int j = 0; j < 33; ++j) {
        const double n = static_cast<double>(proj[i * 33 + j]);
        total += n;
        if (std::abs(i - j) <= 1) near += n;
      }
    worst_fraction = std::min(worst_fraction, total > 0.0 ? near / total : 0.0);
  }
  return {std::abs(rate - expected) <= 1e-12 && worst_fraction >= 0.95,
          fmt("constant=%.9f%% expected=%.9f%%, ramp diagonal mass=%.4f (min 0.95)", rate,
              expected, worst_fraction)};
}

// 8
Outcome cache_effectiveness() {
  const auto model = net::random_init(8008);
  std::string detail;
  int wins = 0;
  for (int run = 0; run < 3; ++run) {
    bench::BenchOptions options;
    options.resolutions = {bench::k4K};
    options.reps = 5;
    options.threads = 1;
    options.image_seed = 80 + run;
    options.pipeline = bench::Pipeline::kNaive;
    const auto naive = bench::run_suite(model, options);
    options.pipeline = bench::Pipeline::kFused;
    const auto fused = bench::run_suite(model, options);
    const double n = naive.results[0].stage(bench::kPerPixel).median_ms;
    const double f = fused.results[0].stage(bench::kPerPixel).median_ms;
    if (n >= 1.3 * f) ++wins;
    detail += fmt("run%.0f naive=%.1fms fused=%.1fms ", run + 1, n, f) + fmt("ratio=%.2f; ", n / f);
  }

  const Image img = random_image(bench::k4K.width, bench::k4K.height, 8009);
  const auto p = net::predict(img, model);
  std::size_t rasters = 0;
  {
    alloc_counter::Watch watch(img.pixel_count() * sizeof(float));
    const Image out = fused_enhance(img, p.luts, p.lut_weights, p.grids, p.grid_weights);
    rasters = watch.count();
  }
  // The only raster-sized allocation allowed is the output itself.
  const std::size_t intermediate = rasters > 0 ? rasters - 1 : 0;
  detail += "intermediate raster allocations=" + std::to_string(intermediate);
  return {wins == 3 && rasters == 1, detail};
}

// 9
Outcome network_golden() {
  Image img(32, 32);
  for (int y = 0; y < 32; ++y)
    for (int x = 0; x < 32; ++x) {
      img.at(0, x, y) = x / 31.0f;
      img.at(1, x, y) = y / 31.0f;
      img.at(2, x, y) = 0.5f + 0.5f * std::sin(0.3f * x + 0.7f * y);
    }
  const auto params = net::random_init(9009);
  const auto& hp = params.hyper;
  const auto ctx = net::backbone_forward(img, params);
  const auto ctx_ref = ref::backbone(img, params);
  if (ctx.size() != 256 || ctx_ref.size() != 256) {
    return {false, "backbone length " + std::to_string(ctx.size())};
  }
  const double backbone = max_diff(ctx, ctx_ref);

  const std::vector<double> ctx_d(ctx.begin(), ctx.end());
  const auto h = ref::heads(ctx_d, params);
  const auto out = net::generators_forward(ctx, params);
  double gen = max_diff(out.grids.data(), h.grid);
  for (int k = 0; k < hp.grid_count; ++k) {
    for (int i = 0; i < 3; ++i) gen = std::max(gen, std::abs(out.grid_weights[k].w[i] - h.grid_weight[4 * k + i]));
    gen = std::max(gen, std::abs(out.grid_weights[k].bias - h.grid_weight[4 * k + 3]));
  }
  for (int c = 0; c < 3; ++c) {
    for (int i = 0; i < 3; ++i) gen = std::max(gen, std::abs(out.lut_weights[c].w[i] - h.lut_weight[4 * c + i]));
    gen = std::max(gen, std::abs(out.lut_weights[c].bias - h.lut_weight[4 * c + 3]));
  }
  const int d = hp.lut_dim, r = hp.rank;
  const std::size_t u_size = 9 * d * r, s_size = 9 * r;
  for (int p = 0; p < 9; ++p) {
    const auto& f = out.lut_factors.planes[p];
    for (int i = 0; i < d; ++i)
      for (int k = 0; k < r; ++k) {
        gen = std::max(gen, std::abs(f.u[i * r + k] - h.lut[p * d * r + i * r + k]));
        gen = std::max(gen, std::abs(f.vt[k * d + i] - h.lut[u_size + s_size + p * d * r + i * r + k]));
      }
    for (int k = 0; k < r; ++k) gen = std::max(gen, std::abs(f.s[k] - h.lut[u_size + p * r + k]));
  }
  return {backbone <= 1e-5 && gen <= 1e-5,
          fmt("length=256 backbone max_abs_diff=%.3g generators max_abs_diff=%.3g (tol 1e-5)",
              backbone, gen)};
}

// 10
Outcome metrics() {
  Rng rng(1010);
  Image a(64, 48);
  for (float& v : a.data()) v = rng.uniform(0.0f, 0.9f);
  Image b = a;
  for (float& v : b.data()) v += 0.1f;
  const double p_ab = psnr(a, b), p_ba = psnr(b, a);

  Image white(4, 4), black(4, 4);
  for (float& v : white.data()) v = 1.0f;
  for (float& v : black.data()) v = 0.0f;
  const double e_wb = delta_e_ab(white, black), e_bw = delta_e_ab(black, white);
  const double e_ab = delta_e_ab(a, b), e_ba = delta_e_ab(b, a);
  const bool ok = std::abs(p_ab - 20.0) <= 1e-6 && p_ab == p_ba &&
                  std::abs(e_wb - 100.0) <= 1e-3 && e_wb == e_bw && e_ab == e_ba;
  return {ok, fmt("psnr=%.9f dB", p_ab) + (p_ab == p_ba ? " (sym yes)" : " (sym no)") +
                  fmt(", delta_e white/black=%.6f", e_wb) +
                  ((e_wb == e_bw && e_ab == e_ba) ? " (sym yes)" : " (sym no)")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"parameter budget", param_budget},
      {"fused/naive equivalence", fused_naive_equivalence},
      {"interpolation oracle", interpolation_oracle},
      {"identity fidelity", identity_fidelity},
      {"svd correctness", svd_correctness},
      {"svd operating point", svd_operating_point},
      {"utilization", utilization},
      {"cache effectiveness", cache_effectiveness},
      {"network golden vectors", network_golden},
      {"metrics", metrics},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s criterion %zu (%s): %s\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
