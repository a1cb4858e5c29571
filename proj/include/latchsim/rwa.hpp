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

#pragma once

#include <span>
#include <vector>

#include "latchsim/qubit.hpp"
#include "latchsim/spectrum.hpp"
#include "latchsim/waveform.hpp"

namespace latchsim {

/// Bessel function of the first kind J_m(x) for integer m and x >= 0.
/// Ascending series for x <= 2, normalized Miller backward recurrence above.
double bessel_j(int m, double x);

/// J_0(x) .. J_n(x) from a single recurrence pass.
std::vector<double> bessel_j_sequence(int n, double x);

/// Largest sideband order the adaptive truncation will use.
inline constexpr int kMaxSidebandOrder = 1024;
inline constexpr double kParsevalTarget = 1e-6;

struct SidebandSet {
  WaveformKind kind = WaveformKind::Square;
  double ratio = 0.0;            ///< delta / Omega
  int m_max = 0;
  std::vector<double> amps;      ///< Delta_m for m = -m_max .. m_max
  double parseval_defect = 0.0;  ///< 1 - sum Delta_m^2

  double at(int m) const { return amps.at(static_cast<std::size_t>(m + m_max)); }
};

/// Delta_m: J_m(ratio) for Sine, the closed-form square-wave coefficient for
/// Square. RampedSquare is rejected.
double sideband_amplitude(WaveformKind kind, int m, double ratio);

SidebandSet sideband_set(WaveformKind kind, double ratio, int m_max);

/// Smallest truncation with Parseval defect below kParsevalTarget, capped at
/// kMaxSidebandOrder.
SidebandSet sideband_set(WaveformKind kind, double ratio);

/// Fourier coefficients of A(t) = exp(i int_0^t f) by numerical quadrature.
/// Requires an ideal Square or Sine waveform with zero phase offset.
SidebandSet fft_sidebands(const ModulationWaveform& w, int m_max);

/// Multi-sideband steady-state excited population at detuning nu.
double rwa_population(const QubitParams& q, const SidebandSet& sb, double omega_mod, double nu);

void rwa_population(const QubitParams& q, const SidebandSet& sb, double omega_mod, std::span<const double> nu,
                    std::span<double> out);

/// Power-broadened half width sqrt(Gamma2^2 + (g Delta_m)^2 Gamma2 / Gamma1).
double rwa_linewidth(const QubitParams& q, double delta_m);

/// True outside the regime Omega >= g where the sideband picture is expected
/// to hold.
bool rwa_extrapolated(const QubitParams& q, double omega_mod);

SpectrumGrid rwa_spectrum(const QubitParams& q, const ModulationWaveform& base, const SweepAxes& axes,
                          unsigned threads = 1);

}  // namespace latchsim
