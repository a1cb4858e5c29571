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

#include <optional>
#include <span>
#include <vector>

#include "latchsim/linalg.hpp"
#include "latchsim/qubit.hpp"
#include "latchsim/spectrum.hpp"
#include "latchsim/transmon.hpp"
#include "latchsim/waveform.hpp"

namespace latchsim {

/// Level 0 is the ground state throughout.
struct DensityMatrix {
  CMatrix rho;

  int dim() const { return static_cast<int>(rho.rows()); }
  double population(int i) const { return rho(i, i).real(); }
  /// Hermiticity and trace deviations plus the most negative eigenvalue.
  double hermiticity_defect() const;
  double trace_defect() const;
  double min_eigenvalue() const;
};

/// Ladder of levels in the frame rotating with the transverse drive.
struct MultilevelModel {
  int n_levels = 2;
  /// Static level frequencies with level 0 at zero.
  std::vector<double> level_freqs;
  /// Per-level coefficient of the modulation f(t) and of the drive frequency.
  std::vector<double> excitation;
  double drive_coupling = 0.0;
  /// Rates on transition i-1 <-> i, index i-1.
  std::vector<double> down_rates;
  std::vector<double> up_rates;
  double gamma_phi = 0.0;
};

/// Two-level model: relaxation gamma1 (nbar + 1), excitation gamma1 nbar with
/// nbar evaluated at the static qubit frequency.
MultilevelModel two_level_model(const QubitParams& q);

/// omega_i = i (omega0 + (1 - i) E_C / 2); drive on 0 <-> 1 only; ladder
/// rates i gamma1 (nbar_i + 1) and i gamma1 nbar_i.
MultilevelModel transmon_ladder_model(const QubitParams& q, double e_c, int n_levels = 5);

std::vector<double> ladder_frequencies(double omega0, double e_c, int count);

/// H(t) in rad/s for modulation offset f and drive frequency omega.
CMatrix hamiltonian(const MultilevelModel& model, double omega, double f);

CMatrix hamiltonian_at(const MultilevelModel& model, const QubitParams& q, const ModulationWaveform& w, double t);

/// Column-major vectorized Lindblad generator for Hamiltonian h.
CMatrix lindblad_generator(const MultilevelModel& model, const CMatrix& h);

/// L(f) = constant + f * slope.
struct GeneratorPair {
  CMatrix constant;
  CMatrix slope;
};

GeneratorPair generator_pair(const MultilevelModel& model, const QubitParams& q);

struct PeriodMap {
  CMatrix map;       ///< rho(T) = map rho(0)
  CMatrix integral;  ///< int_0^T of the propagator, for time averages
  double period = 0.0;
  int steps = 0;     ///< Magnus steps used for non-square pieces, 0 if exact
};

/// One-period superoperator starting at t = 0. Square waves use exact
/// exponentials per latch; other kinds use fourth-order Magnus steps,
/// doubled until the map changes by at most `tolerance` in max norm.
PeriodMap period_map(const MultilevelModel& model, const QubitParams& q, const ModulationWaveform& w,
                     double tolerance = 1e-8);

struct SteadyState {
  DensityMatrix rho;                 ///< fixed point at t = 0
  std::vector<double> populations;   ///< time averaged over one period
};

SteadyState steady_state(const MultilevelModel& model, const QubitParams& q, const ModulationWaveform& w);

/// chi_i for i < n_levels; needs ladder frequencies up to n_levels.
std::vector<double> chi_shifts(double omega0, double e_c, double g0, double omega_r, int n_levels);

/// sum_i P_i chi_i in rad/s, using qubit_frequency(tp) for the ladder.
double dispersive_shift(const TransmonParams& tp, std::span<const double> populations);

/// Same with an explicit qubit frequency.
double dispersive_shift(double omega0, const TransmonParams& tp, std::span<const double> populations);

/// Layer Lindblad2 emits the time-averaged P_1. Layer Lindblad5 emits the
/// dispersive shift in Hz relative to the undriven transmon and needs
/// `readout`.
SpectrumGrid dissipative_spectrum(SolverLayer layer, const QubitParams& q, const ModulationWaveform& base,
                                  const SweepAxes& axes, const std::optional<TransmonParams>& readout,
                                  unsigned threads = 1);

}  // namespace latchsim
