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

// Error of the sudden-switch approximation for a finite linear ramp between
// the latches.

#pragma once

#include "latchsim/qubit.hpp"

namespace latchsim {

enum class RampSide { RightStart, LeftStart };

struct RampSpec {
  double t_ramp = 0.0;  ///< ramp duration, s
  RampSide side = RampSide::RightStart;

  void validate() const;
};

/// Second-order transition probability accumulated during the ramp,
///   w = (T delta / 2)^2 g^2 / (g^2 + (nu +/- delta)^2),
/// with + for RightStart and - for LeftStart.
double sudden_error(const QubitParams& q, double delta, const RampSpec& ramp);

/// Peak value (T delta)^2 / 4 of sudden_error.
double sudden_error_max(double delta, double t_ramp);

/// Integrates the Schroedinger equation across the linear ramp
/// f(t) = (2t/T - 1) delta from the lower eigenstate of the starting latch
/// and returns the population of its upper eigenstate. LeftStart uses the
/// mirrored ramp. Fourth-order Magnus steps, doubled until two successive
/// results agree to `tol`.
double ramp_transition_oracle(const QubitParams& q, double delta, const RampSpec& ramp, double tol = 1e-10);

}  // namespace latchsim
