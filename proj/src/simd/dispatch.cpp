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

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

#include "kernels_impl.hpp"
#include "latchsim/common.hpp"
#include "latchsim/simd/kernels.hpp"

namespace latchsim::simd {

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
    case Isa::Neon:
      return "neon";
  }
  return "unknown";
}

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(LATCHSIM_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(LATCHSIM_HAVE_NEON)
      return true;  // mandatory on AArch64
#else
      return false;
#endif
  }
  return false;
}

Isa detect_isa() {
  if (isa_supported(Isa::Avx2)) return Isa::Avx2;
  if (isa_supported(Isa::Neon)) return Isa::Neon;
  return Isa::Scalar;
}

Isa active_isa() {
  static const Isa chosen = [] {
    if (const char* env = std::getenv("LATCHSIM_SIMD")) {
      const std::string name(env);
      for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
        if (name == to_string(isa) && isa_supported(isa)) return isa;
      }
    }
    return detect_isa();
  }();
  return chosen;
}

namespace {

void check_sizes(std::size_t in, std::size_t out) {
  if (out < in) throw InvalidArgument("simd kernel: output span shorter than input");
}

}  // namespace

void latch_population(const LatchRow& row, std::span<const double> nu, std::span<double> out, Isa isa) {
  check_sizes(nu.size(), out.size());
  if (!(row.g > 0.0)) throw InvalidArgument("latch_population kernel requires g > 0");
  if (!isa_supported(isa)) isa = Isa::Scalar;
  if (isa != Isa::Scalar) {
    double max_nu = 0.0;
    for (double v : nu) max_nu = std::max(max_nu, std::abs(v));
    const double max_phase = 0.5 * std::numbers::pi * (max_nu + row.delta + row.g) / row.omega;
    if (!(max_phase < kMaxVectorPhase)) isa = Isa::Scalar;
  }
  switch (isa) {
#if defined(LATCHSIM_HAVE_AVX2)
    case Isa::Avx2:
      detail::latch_population_avx2(row.g, row.delta, row.omega, nu.data(), out.data(), nu.size());
      return;
#endif
#if defined(LATCHSIM_HAVE_NEON)
    case Isa::Neon:
      detail::latch_population_neon(row.g, row.delta, row.omega, nu.data(), out.data(), nu.size());
      return;
#endif
    default:
      detail::latch_population_scalar(row.g, row.delta, row.omega, nu.data(), out.data(), nu.size());
  }
}

void lorentzian_sum(const LorentzianSum& terms, std::span<const double> nu, std::span<double> out, Isa isa) {
  check_sizes(nu.size(), out.size());
  if (terms.weight.size() != terms.shift.size() || terms.saturation.size() != terms.shift.size()) {
    throw InvalidArgument("lorentzian_sum: term arrays differ in length");
  }
  const detail::LorentzianTerms t{terms.shift.data(), terms.weight.data(), terms.saturation.data(),
                                  terms.shift.size(), terms.gamma2_sq};
  if (!isa_supported(isa)) isa = Isa::Scalar;
  switch (isa) {
#if defined(LATCHSIM_HAVE_AVX2)
    case Isa::Avx2:
      detail::lorentzian_sum_avx2(t, nu.data(), out.data(), nu.size());
      return;
#endif
#if defined(LATCHSIM_HAVE_NEON)
    case Isa::Neon:
      detail::lorentzian_sum_neon(t, nu.data(), out.data(), nu.size());
      return;
#endif
    default:
      detail::lorentzian_sum_scalar(t, nu.data(), out.data(), nu.size());
  }
}

}  // namespace latchsim::simd
