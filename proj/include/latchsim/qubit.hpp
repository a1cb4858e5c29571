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

namespace latchsim {

/// Effective two-level parameters in the frame rotating at the drive
/// frequency. All frequencies and rates are angular (rad/s).
struct QubitParams {
  double omega0 = 0.0;     ///< bare qubit frequency
  double omega = 0.0;      ///< transverse drive frequency
  double g = 0.0;          ///< drive coupling
  double gamma1 = 0.0;     ///< relaxation rate
  double gamma_phi = 0.0;  ///< pure dephasing rate
  double t_bath = 0.0;     ///< bath temperature, K

  /// Detuning nu = omega0 - omega.
  double nu() const { return omega0 - omega; }
  double gamma2() const { return 0.5 * gamma1 + gamma_phi; }

  /// Copy with the drive frequency chosen to give detuning `nu`.
  QubitParams with_detuning(double nu) const {
    QubitParams q = *this;
    q.omega = omega0 - nu;
    return q;
  }

  /// Throws InvalidArgument on negative couplings, rates or temperature.
  void validate() const;
};

}  // namespace latchsim
