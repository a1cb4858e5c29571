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

namespace latchsim {

/// Circuit parameters. Energies are stored as angular frequencies E/hbar.
struct TransmonParams {
  double e_c = 0.0;      ///< charging energy
  double e_j_sum = 0.0;  ///< total Josephson energy of the SQUID
  double asym = 0.0;     ///< junction asymmetry d in [0, 1)
  double flux_dc = 0.0;  ///< static flux bias, units of the flux quantum
  double flux_sq = 0.0;  ///< square flux pulse amplitude, units of the flux quantum
  double omega_r = 0.0;  ///< resonator frequency
  double g0 = 0.0;       ///< vacuum qubit-resonator coupling
  double n_r = 0.0;      ///< coherent photon number of the drive
  double n_g = 0.0;      ///< gate charge offset (charge-basis model only)
  int n_levels = 5;

  /// Throws InvalidArgument outside the transmon working range.
  void validate() const;
};

double plasma_frequency(const TransmonParams& tp);

/// omega_p - E_C.
double qubit_frequency(const TransmonParams& tp);

/// (2 E_C / (E_J cos(pi flux_dc)))^(1/4).
double phi_zpf(const TransmonParams& tp);

/// The expression for delta appears with two prefactors; Halved (default)
/// carries E_J/2, Full drops the 1/2.
enum class AmplitudeConvention { Halved, Full };

struct LatchingAmplitude {
  double magnitude = 0.0;  ///< rad/s
  int sign = 0;            ///< sign of the signed expression, 0 when it vanishes
};

LatchingAmplitude latching_amplitude(const TransmonParams& tp,
                                     AmplitudeConvention conv = AmplitudeConvention::Halved);

/// 2 g0 sqrt(n_r).
double drive_coupling(const TransmonParams& tp);

/// n_r giving drive coupling g.
double photon_number_for_coupling(double g, double g0);

/// Static flux bias in [0, 1/2) at which qubit_frequency equals omega0.
double flux_for_qubit_frequency(const TransmonParams& tp, double omega0);

/// Pulse amplitude in [0, 1/4] giving latching amplitude delta at the
/// current flux_dc.
double flux_sq_for_amplitude(const TransmonParams& tp, double delta,
                             AmplitudeConvention conv = AmplitudeConvention::Halved);

/// E_J_sum sqrt(cos^2(pi flux) + d^2 sin^2(pi flux)).
double effective_josephson(const TransmonParams& tp, double flux);

/// Lowest tp.n_levels eigenfrequencies of 4 E_C (n - n_g)^2 - E_J(flux) cos(phi)
/// relative to the ground state, with charge states |n| <= cutoff. Throws
/// ConvergenceError when doubling the cutoff moves a level by more than
/// 1e-9 relative.
std::vector<double> charge_basis_levels(const TransmonParams& tp, double flux, int cutoff = 20);

struct FluxPoint {
  double flux;       ///< units of the flux quantum
  double frequency;  ///< measured 0-1 transition, rad/s
};

struct TransmonFit {
  double e_c = 0.0;
  double e_j_sum = 0.0;
  double asym = 0.0;
  double rms_residual = 0.0;  ///< rad/s
  int iterations = 0;
  bool converged = false;
};

/// Least-squares fit of (E_C, E_J_sum, d) to a measured flux spectrum by
/// derivative-free simplex minimization, starting from `guess`.
TransmonFit fit_transmon(std::span<const FluxPoint> data, const TransmonParams& guess, int cutoff = 20,
                         int max_iterations = 2000);

}  // namespace latchsim
