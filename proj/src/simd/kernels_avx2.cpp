// Copyright 2026 The latchsim Authors
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

// AVX2 + FMA variants. Built with -mavx2 -mfma; only called after a runtime
// CPU check.

#include <immintrin.h>

#include "kernels_impl.hpp"

namespace latchsim::simd::detail {
namespace {

// pi/2 split into three pieces of 33 significant bits (fdlibm), so that
// k * piece is exact for |k| < 2^20.
constexpr double kPio2Hi = 1.57079632673412561417e+00;
constexpr double kPio2Mid = 6.07710050630396597660e-11;
constexpr double kPio2Lo = 2.02226624871116645580e-21;
constexpr double kTwoOverPi = 6.36619772367581382433e-01;

// Minimax coefficients on [-pi/4, pi/4] (fdlibm __kernel_sin / __kernel_cos).
constexpr double kS1 = -1.66666666666666324348e-01;
constexpr double kS2 = 8.33333333332248946124e-03;
constexpr double kS3 = -1.98412698298579493134e-04;
constexpr double kS4 = 2.75573137070700676789e-06;
constexpr double kS5 = -2.50507602534068634195e-08;
constexpr double kS6 = 1.58969099521155010221e-10;
constexpr double kC1 = 4.16666666666666019037e-02;
constexpr double kC2 = -1.38888888888741095749e-03;
constexpr double kC3 = 2.48015872894767294178e-05;
constexpr double kC4 = -2.75573143513906633035e-07;
constexpr double kC5 = 2.08757232129817482790e-09;
constexpr double kC6 = -1.13596475577881948265e-11;

inline __m256d set1(double v) { return _mm256_set1_pd(v); }

inline void sincos(__m256d x, __m256d* s_out, __m256d* c_out) {
  const __m256d k = _mm256_round_pd(_mm256_mul_pd(x, set1(kTwoOverPi)), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(k, set1(kPio2Hi), x);
  r = _mm256_fnmadd_pd(k, set1(kPio2Mid), r);
  r = _mm256_fnmadd_pd(k, set1(kPio2Lo), r);

  const __m256d z = _mm256_mul_pd(r, r);
  __m256d ps = _mm256_fmadd_pd(z, set1(kS6), set1(kS5));
  ps = _mm256_fmadd_pd(z, ps, set1(kS4));
  ps = _mm256_fmadd_pd(z, ps, set1(kS3));
  ps = _mm256_fmadd_pd(z, ps, set1(kS2));
  ps = _mm256_fmadd_pd(z, ps, set1(kS1));
  const __m256d sin_r = _mm256_fmadd_pd(_mm256_mul_pd(z, r), ps, r);

  __m256d pc = _mm256_fmadd_pd(z, set1(kC6), set1(kC5));
  pc = _mm256_fmadd_pd(z, pc, set1(kC4));
  pc = _mm256_fmadd_pd(z, pc, set1(kC3));
  pc = _mm256_fmadd_pd(z, pc, set1(kC2));
  pc = _mm256_fmadd_pd(z, pc, set1(kC1));
  const __m256d cos_r = _mm256_fmadd_pd(_mm256_mul_pd(z, z), pc, _mm256_fnmadd_pd(set1(0.5), z, set1(1.0)));

  // quadrant = k mod 4, exact in double for the supported range
  const __m256d quarter = _mm256_floor_pd(_mm256_mul_pd(k, set1(0.25)));
  const __m256d quad = _mm256_fnmadd_pd(quarter, set1(4.0), k);
  const __m256d odd = _mm256_or_pd(_mm256_cmp_pd(quad, set1(1.0), _CMP_EQ_OQ), _mm256_cmp_pd(quad, set1(3.0), _CMP_EQ_OQ));
  const __m256d sin_neg = _mm256_cmp_pd(quad, set1(1.5), _CMP_GT_OQ);  // quadrants 2, 3
  const __m256d cos_neg = _mm256_or_pd(_mm256_cmp_pd(quad, set1(1.0), _CMP_EQ_OQ), _mm256_cmp_pd(quad, set1(2.0), _CMP_EQ_OQ));
  const __m256d sign_bit = set1(-0.0);

  __m256d s = _mm256_blendv_pd(sin_r, cos_r, odd);
  __m256d c = _mm256_blendv_pd(cos_r, sin_r, odd);
  s = _mm256_xor_pd(s, _mm256_and_pd(sin_neg, sign_bit));
  c = _mm256_xor_pd(c, _mm256_and_pd(cos_neg, sign_bit));
  *s_out = s;
  *c_out = c;
}

inline __m256d latch_lanes(__m256d nu, __m256d g, __m256d delta, __m256d phase_scale) {
  const __m256d one = set1(1.0);
  const __m256d half = set1(0.5);
  const __m256d zero = _mm256_setzero_pd();
  const __m256d g2 = _mm256_mul_pd(g, g);
  const __m256d a = _mm256_add_pd(nu, delta);
  const __m256d b = _mm256_sub_pd(nu, delta);
  const __m256d eps_r = _mm256_sqrt_pd(_mm256_fmadd_pd(a, a, g2));
  const __m256d eps_l = _mm256_sqrt_pd(_mm256_fmadd_pd(b, b, g2));
  const __m256d inv = _mm256_div_pd(one, _mm256_mul_pd(eps_r, eps_l));
  const __m256d c = _mm256_mul_pd(_mm256_fmadd_pd(a, b, g2), inv);
  const __m256d s = _mm256_mul_pd(_mm256_mul_pd(set1(2.0), _mm256_mul_pd(g, delta)), inv);
  const __m256d s2 = _mm256_mul_pd(s, s);

  // p_s and 1 - p_s, each from the branch that avoids cancellation
  const __m256d small_angle = _mm256_cmp_pd(c, zero, _CMP_GE_OQ);
  const __m256d p_direct = _mm256_div_pd(s2, _mm256_mul_pd(set1(2.0), _mm256_add_pd(one, c)));
  const __m256d q_direct = _mm256_div_pd(s2, _mm256_mul_pd(set1(2.0), _mm256_sub_pd(one, c)));
  const __m256d p = _mm256_blendv_pd(_mm256_sub_pd(one, q_direct), p_direct, small_angle);
  const __m256d q = _mm256_blendv_pd(q_direct, _mm256_sub_pd(one, p_direct), small_angle);

  __m256d sr, cr, sl, cl;
  sincos(_mm256_mul_pd(eps_r, phase_scale), &sr, &cr);
  sincos(_mm256_mul_pd(eps_l, phase_scale), &sl, &cl);
  const __m256d sin_sum = _mm256_fmadd_pd(sr, cl, _mm256_mul_pd(cr, sl));
  const __m256d sin_diff = _mm256_fmsub_pd(sr, cl, _mm256_mul_pd(cr, sl));
  const __m256d q_sum = _mm256_mul_pd(q, sin_sum);
  const __m256d p_diff = _mm256_mul_pd(p, sin_diff);
  const __m256d im_right = _mm256_sub_pd(_mm256_sub_pd(zero, q_sum), p_diff);
  const __m256d im_left = _mm256_sub_pd(p_diff, q_sum);
  const __m256d mix = _mm256_mul_pd(set1(4.0), _mm256_mul_pd(p, q));
  const __m256d gam_right = _mm256_mul_pd(mix, _mm256_mul_pd(sl, sl));
  const __m256d gam_left = _mm256_mul_pd(mix, _mm256_mul_pd(sr, sr));

  const __m256d pr_raw = _mm256_div_pd(_mm256_mul_pd(half, gam_right), _mm256_fmadd_pd(im_right, im_right, gam_right));
  const __m256d pl_raw = _mm256_div_pd(_mm256_mul_pd(half, gam_left), _mm256_fmadd_pd(im_left, im_left, gam_left));
  const __m256d pr = _mm256_and_pd(pr_raw, _mm256_cmp_pd(gam_right, zero, _CMP_GT_OQ));
  const __m256d pl = _mm256_and_pd(pl_raw, _mm256_cmp_pd(gam_left, zero, _CMP_GT_OQ));
  return _mm256_mul_pd(half, _mm256_add_pd(pr, pl));
}

}  // namespace

void latch_population_avx2(double g, double delta, double omega, const double* nu, double* out,
                           std::size_t n) {
  const __m256d vg = set1(g);
  const __m256d vdelta = set1(delta);
  const __m256d vscale = set1(0.5 * 3.14159265358979323846 / omega);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i, latch_lanes(_mm256_loadu_pd(nu + i), vg, vdelta, vscale));
  }
  if (i < n) {
    // pad the tail with a copy of the last valid detuning
    alignas(32) double in_tail[4];
    alignas(32) double out_tail[4];
    for (std::size_t k = 0; k < 4; ++k) in_tail[k] = nu[i + k < n ? i + k : n - 1];
    _mm256_store_pd(out_tail, latch_lanes(_mm256_load_pd(in_tail), vg, vdelta, vscale));
    for (std::size_t k = 0; i + k < n; ++k) out[i + k] = out_tail[k];
  }
}

void lorentzian_sum_avx2(const LorentzianTerms& t, const double* nu, double* out, std::size_t n) {
  const __m256d g2 = set1(t.gamma2_sq);
  auto lanes = [&](__m256d x) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t k = 0; k < t.count; ++k) {
      const __m256d d = _mm256_add_pd(x, set1(t.shift[k]));
      const __m256d den = _mm256_fmadd_pd(d, d, _mm256_add_pd(g2, set1(t.saturation[k])));
      acc = _mm256_add_pd(acc, _mm256_div_pd(set1(t.weight[k]), den));
    }
    return acc;
  };
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, lanes(_mm256_loadu_pd(nu + i)));
  if (i < n) {
    alignas(32) double in_tail[4];
    alignas(32) double out_tail[4];
    for (std::size_t k = 0; k < 4; ++k) in_tail[k] = nu[i + k < n ? i + k : n - 1];
    _mm256_store_pd(out_tail, lanes(_mm256_load_pd(in_tail)));
    for (std::size_t k = 0; i + k < n; ++k) out[i + k] = out_tail[k];
  }
}

}  // namespace latchsim::simd::detail
