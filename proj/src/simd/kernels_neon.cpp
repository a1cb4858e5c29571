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

// AArch64 NEON variants (two double lanes). Mirrors kernels_avx2.cpp.

#include <arm_neon.h>

#include "kernels_impl.hpp"

namespace latchsim::simd::detail {
namespace {

constexpr double kPio2Hi = 1.57079632673412561417e+00;
constexpr double kPio2Mid = 6.07710050630396597660e-11;
constexpr double kPio2Lo = 2.02226624871116645580e-21;
constexpr double kTwoOverPi = 6.36619772367581382433e-01;

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

inline float64x2_t dup(double v) { return vdupq_n_f64(v); }

// a + b * c
inline float64x2_t fma(float64x2_t a, float64x2_t b, float64x2_t c) { return vfmaq_f64(a, b, c); }

inline float64x2_t negate_where(float64x2_t v, uint64x2_t mask) {
  const uint64x2_t sign = vandq_u64(mask, vdupq_n_u64(0x8000000000000000ULL));
  return vreinterpretq_f64_u64(veorq_u64(vreinterpretq_u64_f64(v), sign));
}

inline void sincos(float64x2_t x, float64x2_t* s_out, float64x2_t* c_out) {
  const float64x2_t k = vrndnq_f64(vmulq_f64(x, dup(kTwoOverPi)));
  float64x2_t r = vfmsq_f64(x, k, dup(kPio2Hi));
  r = vfmsq_f64(r, k, dup(kPio2Mid));
  r = vfmsq_f64(r, k, dup(kPio2Lo));

  const float64x2_t z = vmulq_f64(r, r);
  float64x2_t ps = fma(dup(kS5), z, dup(kS6));
  ps = fma(dup(kS4), z, ps);
  ps = fma(dup(kS3), z, ps);
  ps = fma(dup(kS2), z, ps);
  ps = fma(dup(kS1), z, ps);
  const float64x2_t sin_r = fma(r, vmulq_f64(z, r), ps);

  float64x2_t pc = fma(dup(kC5), z, dup(kC6));
  pc = fma(dup(kC4), z, pc);
  pc = fma(dup(kC3), z, pc);
  pc = fma(dup(kC2), z, pc);
  pc = fma(dup(kC1), z, pc);
  const float64x2_t cos_r = fma(vfmsq_f64(dup(1.0), dup(0.5), z), vmulq_f64(z, z), pc);

  const float64x2_t quarter = vrndmq_f64(vmulq_f64(k, dup(0.25)));
  const float64x2_t quad = vfmsq_f64(k, quarter, dup(4.0));
  const uint64x2_t is1 = vceqq_f64(quad, dup(1.0));
  const uint64x2_t is2 = vceqq_f64(quad, dup(2.0));
  const uint64x2_t is3 = vceqq_f64(quad, dup(3.0));
  const uint64x2_t odd = vorrq_u64(is1, is3);
  const uint64x2_t sin_neg = vorrq_u64(is2, is3);
  const uint64x2_t cos_neg = vorrq_u64(is1, is2);

  *s_out = negate_where(vbslq_f64(odd, cos_r, sin_r), sin_neg);
  *c_out = negate_where(vbslq_f64(odd, sin_r, cos_r), cos_neg);
}

inline float64x2_t latch_lanes(float64x2_t nu, float64x2_t g, float64x2_t delta, float64x2_t phase_scale) {
  const float64x2_t one = dup(1.0);
  const float64x2_t half = dup(0.5);
  const float64x2_t zero = dup(0.0);
  const float64x2_t g2 = vmulq_f64(g, g);
  const float64x2_t a = vaddq_f64(nu, delta);
  const float64x2_t b = vsubq_f64(nu, delta);
  const float64x2_t eps_r = vsqrtq_f64(fma(g2, a, a));
  const float64x2_t eps_l = vsqrtq_f64(fma(g2, b, b));
  const float64x2_t inv = vdivq_f64(one, vmulq_f64(eps_r, eps_l));
  const float64x2_t c = vmulq_f64(fma(g2, a, b), inv);
  const float64x2_t s = vmulq_f64(vmulq_f64(dup(2.0), vmulq_f64(g, delta)), inv);
  const float64x2_t s2 = vmulq_f64(s, s);

  const uint64x2_t small_angle = vcgeq_f64(c, zero);
  const float64x2_t p_direct = vdivq_f64(s2, vmulq_f64(dup(2.0), vaddq_f64(one, c)));
  const float64x2_t q_direct = vdivq_f64(s2, vmulq_f64(dup(2.0), vsubq_f64(one, c)));
  const float64x2_t p = vbslq_f64(small_angle, p_direct, vsubq_f64(one, q_direct));
  const float64x2_t q = vbslq_f64(small_angle, vsubq_f64(one, p_direct), q_direct);

  float64x2_t sr, cr, sl, cl;
  sincos(vmulq_f64(eps_r, phase_scale), &sr, &cr);
  sincos(vmulq_f64(eps_l, phase_scale), &sl, &cl);
  const float64x2_t sin_sum = fma(vmulq_f64(cr, sl), sr, cl);
  const float64x2_t sin_diff = vfmsq_f64(vmulq_f64(sr, cl), cr, sl);
  const float64x2_t q_sum = vmulq_f64(q, sin_sum);
  const float64x2_t p_diff = vmulq_f64(p, sin_diff);
  const float64x2_t im_right = vsubq_f64(vnegq_f64(q_sum), p_diff);
  const float64x2_t im_left = vsubq_f64(p_diff, q_sum);
  const float64x2_t mix = vmulq_f64(dup(4.0), vmulq_f64(p, q));
  const float64x2_t gam_right = vmulq_f64(mix, vmulq_f64(sl, sl));
  const float64x2_t gam_left = vmulq_f64(mix, vmulq_f64(sr, sr));

  const float64x2_t pr_raw = vdivq_f64(vmulq_f64(half, gam_right), fma(gam_right, im_right, im_right));
  const float64x2_t pl_raw = vdivq_f64(vmulq_f64(half, gam_left), fma(gam_left, im_left, im_left));
  const float64x2_t pr = vbslq_f64(vcgtq_f64(gam_right, zero), pr_raw, zero);
  const float64x2_t pl = vbslq_f64(vcgtq_f64(gam_left, zero), pl_raw, zero);
  return vmulq_f64(half, vaddq_f64(pr, pl));
}

}  // namespace

void latch_population_neon(double g, double delta, double omega, const double* nu, double* out,
                           std::size_t n) {
  const float64x2_t vg = dup(g);
  const float64x2_t vdelta = dup(delta);
  const float64x2_t vscale = dup(0.5 * 3.14159265358979323846 / omega);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(out + i, latch_lanes(vld1q_f64(nu + i), vg, vdelta, vscale));
  if (i < n) {
    const double in_tail[2] = {nu[i], nu[i]};
    double out_tail[2];
    vst1q_f64(out_tail, latch_lanes(vld1q_f64(in_tail), vg, vdelta, vscale));
    out[i] = out_tail[0];
  }
}

void lorentzian_sum_neon(const LorentzianTerms& t, const double* nu, double* out, std::size_t n) {
  const float64x2_t g2 = dup(t.gamma2_sq);
  auto lanes = [&](float64x2_t x) {
    float64x2_t acc = dup(0.0);
    for (std::size_t k = 0; k < t.count; ++k) {
      const float64x2_t d = vaddq_f64(x, dup(t.shift[k]));
      const float64x2_t den = fma(vaddq_f64(g2, dup(t.saturation[k])), d, d);
      acc = vaddq_f64(acc, vdivq_f64(dup(t.weight[k]), den));
    }
    return acc;
  };
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(out + i, lanes(vld1q_f64(nu + i)));
  if (i < n) {
    const double in_tail[2] = {nu[i], nu[i]};
    double out_tail[2];
    vst1q_f64(out_tail, lanes(vld1q_f64(in_tail)));
    out[i] = out_tail[0];
  }
}

}  // namespace latchsim::simd::detail
