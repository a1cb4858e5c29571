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

// Per-ISA entry points. The vector translation units are compiled with
// target-specific flags, so they take plain pointers and include nothing
// beyond the intrinsics headers.

#pragma once

#include <cstddef>

namespace latchsim::simd::detail {

struct LorentzianTerms {
  const double* shift;
  const double* weight;
  const double* saturation;
  std::size_t count;
  double gamma2_sq;
};

void latch_population_scalar(double g, double delta, double omega, const double* nu, double* out,
                             std::size_t n);
void lorentzian_sum_scalar(const LorentzianTerms& t, const double* nu, double* out, std::size_t n);

#if defined(LATCHSIM_HAVE_AVX2)
void latch_population_avx2(double g, double delta, double omega, const double* nu, double* out,
                           std::size_t n);
void lorentzian_sum_avx2(const LorentzianTerms& t, const double* nu, double* out, std::size_t n);
#endif

#if defined(LATCHSIM_HAVE_NEON)
void latch_population_neon(double g, double delta, double omega, const double* nu, double* out,
                           std::size_t n);
void lorentzian_sum_neon(const LorentzianTerms& t, const double* nu, double* out, std::size_t n);
#endif

}  // namespace latchsim::simd::detail
