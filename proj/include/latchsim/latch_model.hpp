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

// Adiabatic-impulse algebra for ideal square-wave (latching) modulation.
//
// Over one period the qubit spends half a period in each latch, where the
// Hamiltonian 1/2 (nu +/- delta) sigma_z + g/2 sigma_x is constant, and is
// switched instantaneously between the two latch eigenbases. The period
// propagator in the right-latch eigenbasis (ordered +, -) is
//
//   U = Uphi/2(r) . S^T . Uphi(l) . S . Uphi/2(r) = [[alpha, -gamma*], [gamma, alpha*]]
//
// with S the basis change between latches and Uphi the adiabatic phases.

#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "latchsim/qubit.hpp"
#include "latchsim/spectrum.hpp"
#include "latchsim/waveform.hpp"

namespace latchsim {

/// Per-latch quantities for detuning nu = q.nu(), amplitude delta and
/// modulation frequency omega_mod.
struct LatchFrame {
  double theta_r = 0.0;  ///< mixing angle in the right latch (nu + delta), [0, pi]
  double theta_l = 0.0;  ///< mixing angle in the left latch (nu - delta), [0, pi]
  double eps_r = 0.0;    ///< sqrt((nu + delta)^2 + g^2)
  double eps_l = 0.0;    ///< sqrt((nu - delta)^2 + g^2)
  double phi_r = 0.0;    ///< pi eps_r / (2 Omega)
  double phi_l = 0.0;    ///< pi eps_l / (2 Omega)
  double p_s = 0.0;      ///< sudden-switch probability sin^2((theta_l - theta_r)/2)
  double p_stay = 1.0;   ///< 1 - p_s, evaluated without cancellation
};

enum class StartLatch { RightStart, LeftStart, PhaseAveraged };

struct PeriodUnitary {
  std::complex<double> alpha;
  std::complex<double> gamma;
  double phi = 0.0;  ///< Floquet phase, cos(phi) = Re(alpha), in [0, pi]
};

LatchFrame latch_frame(const QubitParams& q, double delta, double omega_mod);

/// Sudden-switch probability from the latch geometry alone; returns
/// {p_s, 1 - p_s}. Throws DegenerateCrossing when g = 0 and |nu| <= delta.
std::pair<double, double> switch_probability(double nu, double delta, double g);

/// One-period propagator starting in the right latch, or with the latches
/// exchanged for LeftStart. PhaseAveraged is rejected.
PeriodUnitary period_unitary(const LatchFrame& lf, StartLatch start = StartLatch::RightStart);

/// The same propagator as an explicit 2x2 matrix in the starting latch's
/// eigenbasis, ordered (+, -).
Eigen::Matrix2cd period_matrix(const PeriodUnitary& pu);

/// Excited-state population after one period from the ground state of the
/// starting (right) latch: 4 p_s (1 - p_s) sin^2(phi_l).
double single_period_population(const LatchFrame& lf);

/// Excited-state population after n periods, |gamma|^2 sin^2(n phi)/sin^2(phi).
/// n = 0 gives 0.
double n_period_population(const PeriodUnitary& pu, int n);

/// Long-time average of the excited-state population for one starting latch.
double averaged_population(const PeriodUnitary& pu);

/// Long-time average for the requested starting convention; PhaseAveraged is
/// the mean of the right- and left-start values.
double averaged_population(const LatchFrame& lf, StartLatch start);

enum class ResonanceFamily { DiffRes, SumRes, SinglePeriodRes, AntiRes };

std::string_view to_string(ResonanceFamily f);
ResonanceFamily parse_resonance_family(std::string_view s);

struct ResonancePoint {
  double omega_mod;  ///< rad/s
  double nu;         ///< rad/s
};

/// Solves the resonance condition of `family` with integer `index` for the
/// detuning at each modulation frequency in `omega_values`:
///
///   DiffRes          eps_l - eps_r = 2 m Omega    (m != 0)
///   SumRes           eps_l + eps_r = 2 m Omega    (m >= 1)
///   SinglePeriodRes  eps_l = (2n + 1) Omega       (n >= 0)
///   AntiRes          eps_l = 2 n Omega            (n >= 1)
///
/// All real roots are returned, ordered by Omega and then nu; frequencies
/// without a solution contribute nothing.
std::vector<ResonancePoint> resonance_curves(const QubitParams& q, double delta, ResonanceFamily family,
                                             int index, std::span<const double> omega_values);

/// Phase-averaged long-time population over a (nu, Omega) or (nu, delta)
/// grid of a square-wave drive. `base` supplies delta (for Omega sweeps) or
/// Omega (for delta sweeps).
/// Cells where the crossing is degenerate are NaN.
SpectrumGrid latch_spectrum(const QubitParams& q, const ModulationWaveform& base, const SweepAxes& axes,
                            unsigned threads = 1);

}  // namespace latchsim
