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

// Batched closed-form kernels used by the spectrum sweeps. Each kernel has a
// scalar reference implementation and vector variants (AVX2+FMA on x86-64,
// NEON on AArch64) that are selected at runtime. The vector variants agree
// with the scalar reference to rounding level; they are not bit-identical
// because the vector sine/cosine differ from libm in the last ulp.
//
// The selection can be pinned with LATCHSIM_SIMD=scalar|avx2|neon.

#pragma once

#include <cstddef>
#include <span>
#include <string_view>

namespace latchsim::simd {

enum class Isa { Scalar, Avx2, Neon };

std::string_view to_string(Isa isa);

/// True when `isa` was compiled in and the CPU supports it.
bool isa_supported(Isa isa);

/// Best supported ISA, ignoring the environment override.
Isa detect_isa();

/// detect_isa() unless LATCHSIM_SIMD names a supported ISA. Evaluated once.
Isa active_isa();

/// Parameters shared by a row of latch-population evaluations (rad/s).
struct LatchRow {
  double g;
  double delta;
  double omega;
};

/// Phase-averaged long-time excited population for each detuning in `nu`.
/// Requires g > 0; `out` must be at least as long as `nu`.
void latch_population(const LatchRow& row, std::span<const double> nu, std::span<double> out,
                      Isa isa = active_isa());

/// Sum of saturated Lorentzians
///   out[i] = sum_k weight[k] / (gamma2_sq + (nu[i] + shift[k])^2 + saturation[k]).
struct LorentzianSum {
  std::span<const double> shift;
  std::span<const double> weight;
  std::span<const double> saturation;
  double gamma2_sq;
};

void lorentzian_sum(const LorentzianSum& terms, std::span<const double> nu, std::span<double> out,
                    Isa isa = active_isa());

/// Largest |argument| the vector sine/cosine reduce accurately; larger phases
/// are routed to the scalar kernel.
inline constexpr double kMaxVectorPhase = 8.0e5;

}  // namespace latchsim::simd
