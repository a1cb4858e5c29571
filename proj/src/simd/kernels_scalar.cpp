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

#include <cmath>
#include <numbers>

#include "kernels_impl.hpp"

namespace latchsim::simd::detail {

void latch_population_scalar(double g, double delta, double omega, const double* nu, double* out,
                             std::size_t n) {
  const double phase_scale = 0.5 * std::numbers::pi / omega;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = nu[i] + delta;
    const double b = nu[i] - delta;
    const double eps_r = std::sqrt(a * a + g * g);
    const double eps_l = std::sqrt(b * b + g * g);
    const double inv = 1.0 / (eps_r * eps_l);
    // cos and sin of theta_l - theta_r
    const double c = (a * b + g * g) * inv;
    const double s = 2.0 * g * delta * inv;
    double p;
    double q;
    if (c >= 0.0) {
      p = s * s / (2.0 * (1.0 + c));
      q = 1.0 - p;
    } else {
      q = s * s / (2.0 * (1.0 - c));
      p = 1.0 - q;
    }
    const double phi_r = eps_r * phase_scale;
    const double phi_l = eps_l * phase_scale;
    const double sr = std::sin(phi_r), cr = std::cos(phi_r);
    const double sl = std::sin(phi_l), cl = std::cos(phi_l);
    const double sin_sum = sr * cl + cr * sl;
    const double sin_diff = sr * cl - cr * sl;
    const double im_right = -q * sin_sum - p * sin_diff;
    const double im_left = -q * sin_sum + p * sin_diff;
    const double mix = 4.0 * p * q;
    const double gam_right = mix * sl * sl;
    const double gam_left = mix * sr * sr;
    const double p_right = gam_right > 0.0 ? 0.5 * gam_right / (gam_right + im_right * im_right) : 0.0;
    const double p_left = gam_left > 0.0 ? 0.5 * gam_left / (gam_left + im_left * im_left) : 0.0;
    out[i] = 0.5 * (p_right + p_left);
  }
}

void lorentzian_sum_scalar(const LorentzianTerms& t, const double* nu, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < t.count; ++k) {
      const double d = nu[i] + t.shift[k];
      acc += t.weight[k] / (t.gamma2_sq + d * d + t.saturation[k]);
    }
    out[i] = acc;
  }
}

}  // namespace latchsim::simd::detail
