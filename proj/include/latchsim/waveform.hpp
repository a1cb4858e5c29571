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

#include <string>
#include <string_view>
#include <vector>

namespace latchsim {

enum class WaveformKind { Square, Sine, RampedSquare };

std::string_view to_string(WaveformKind kind);
/// Accepts "square", "sine", "ramped-square" (case-sensitive).
WaveformKind parse_waveform_kind(std::string_view name);

/// Periodic longitudinal modulation f(t) of the qubit splitting.
///
/// Square:       f(t) = delta * sgn[cos(omega t + phase)], sgn(0) = +1
/// Sine:         f(t) = delta * cos(omega t + phase)
/// RampedSquare: the square wave with each switch replaced by a linear ramp
///               of duration `ramp`, centred on the ideal switching instant.
struct ModulationWaveform {
  WaveformKind kind = WaveformKind::Square;
  double delta = 0.0;  ///< amplitude, rad/s
  double omega = 1.0;  ///< modulation angular frequency, rad/s
  double phase = 0.0;  ///< offset omega*t0, radians
  double ramp = 0.0;   ///< ramp duration in seconds (RampedSquare only)

  double period() const;
  /// Throws InvalidArgument when omega <= 0, delta < 0 or the ramp does not
  /// fit in a half period.
  void validate() const;
};

/// f(t) in rad/s.
double evaluate(const ModulationWaveform& w, double t);

/// Closed-form integral of f over [t0, t1]; throws InvalidArgument if t1 < t0.
double phase_integral(const ModulationWaveform& w, double t0, double t1);

/// A constant-f piece of one modulation period.
struct Segment {
  double duration;
  double f;
};

/// Splits [t0, t0 + period) into constant-f pieces. Only defined for Square;
/// the pieces are ordered in time and their durations sum to the period.
std::vector<Segment> square_segments(const ModulationWaveform& w, double t0 = 0.0);

}  // namespace latchsim
