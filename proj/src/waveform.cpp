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

#include "latchsim/waveform.hpp"

#include <cmath>
#include <string>

#include "latchsim/common.hpp"

namespace latchsim {
namespace {

constexpr double kHalfPi = 0.5 * kPi;

// Maps the modulation phase u onto [-pi/2, 3pi/2), where the ideal square wave
// is +1 on [-pi/2, pi/2] and -1 on (pi/2, 3pi/2).
double reduce_phase(double u) {
  double v = u - kTwoPi * std::floor((u + kHalfPi) / kTwoPi);
  if (v >= 1.5 * kPi) v -= kTwoPi;  // floor rounding at the upper edge
  if (v < -kHalfPi) v = -kHalfPi;
  return v;
}

// Unit-amplitude square wave and its antiderivative in the phase variable.
double square_shape(double v) { return v <= kHalfPi ? 1.0 : -1.0; }
double square_primitive(double v) { return v <= kHalfPi ? v : kPi - v; }

// Ramped square wave with half-window h (radians of phase). The reduced phase
// is shifted so that the window around 3pi/2 is contiguous: v in
// [-pi/2 - h, 3pi/2 - h).
double ramped_shape(double v, double h) {
  if (h <= 0.0) return square_shape(v);
  if (v >= 1.5 * kPi - h) v -= kTwoPi;
  if (v < -kHalfPi + h) return -1.0 + (v - (-kHalfPi - h)) / h;
  if (v <= kHalfPi - h) return 1.0;
  if (v < kHalfPi + h) return 1.0 - (v - (kHalfPi - h)) / h;
  return -1.0;
}

double ramped_primitive(double v, double h) {
  if (h <= 0.0) return square_primitive(v);
  if (v >= 1.5 * kPi - h) v -= kTwoPi;
  if (v < -kHalfPi + h) {
    const double s = v - (-kHalfPi - h);
    return -kHalfPi + h - s + s * s / (2.0 * h);
  }
  if (v <= kHalfPi - h) return v;
  if (v < kHalfPi + h) {
    const double s = v - (kHalfPi - h);
    return kHalfPi - h + s - s * s / (2.0 * h);
  }
  return kPi - v;
}

}  // namespace

std::string_view to_string(WaveformKind kind) {
  switch (kind) {
    case WaveformKind::Square:
      return "square";
    case WaveformKind::Sine:
      return "sine";
    case WaveformKind::RampedSquare:
      return "ramped-square";
  }
  return "unknown";
}

WaveformKind parse_waveform_kind(std::string_view name) {
  if (name == "square") return WaveformKind::Square;
  if (name == "sine") return WaveformKind::Sine;
  if (name == "ramped-square") return WaveformKind::RampedSquare;
  throw InvalidArgument("unknown waveform kind '" + std::string(name) +
                        "' (expected square, sine or ramped-square)");
}

double ModulationWaveform::period() const { return kTwoPi / omega; }

void ModulationWaveform::validate() const {
  if (!(omega > 0.0) || !std::isfinite(omega)) throw InvalidArgument("waveform: omega must be > 0");
  if (!(delta >= 0.0) || !std::isfinite(delta)) throw InvalidArgument("waveform: delta must be >= 0");
  if (!std::isfinite(phase)) throw InvalidArgument("waveform: phase must be finite");
  if (kind == WaveformKind::RampedSquare) {
    if (!(ramp >= 0.0)) throw InvalidArgument("waveform: ramp must be >= 0");
    if (!(ramp < kPi / omega)) throw InvalidArgument("waveform: ramp must be shorter than half a period");
  }
}

double evaluate(const ModulationWaveform& w, double t) {
  const double u = w.omega * t + w.phase;
  switch (w.kind) {
    case WaveformKind::Sine:
      return w.delta * std::cos(u);
    case WaveformKind::Square:
      return w.delta * square_shape(reduce_phase(u));
    case WaveformKind::RampedSquare:
      return w.delta * ramped_shape(reduce_phase(u), 0.5 * w.omega * w.ramp);
  }
  return 0.0;
}

double phase_integral(const ModulationWaveform& w, double t0, double t1) {
  if (t1 < t0) throw InvalidArgument("phase_integral: reversed interval");
  const double u0 = w.omega * t0 + w.phase;
  const double u1 = w.omega * t1 + w.phase;
  const double scale = w.delta / w.omega;
  switch (w.kind) {
    case WaveformKind::Sine:
      return scale * (std::sin(u1) - std::sin(u0));
    case WaveformKind::Square:
      return scale * (square_primitive(reduce_phase(u1)) - square_primitive(reduce_phase(u0)));
    case WaveformKind::RampedSquare: {
      const double h = 0.5 * w.omega * w.ramp;
      return scale * (ramped_primitive(reduce_phase(u1), h) - ramped_primitive(reduce_phase(u0), h));
    }
  }
  return 0.0;
}

std::vector<Segment> square_segments(const ModulationWaveform& w, double t0) {
  if (w.kind != WaveformKind::Square) throw InvalidArgument("square_segments: waveform is not an ideal square wave");
  // Switches sit at u = pi/2 + k*pi. Walk one period of phase from u0.
  const double u0 = w.omega * t0 + w.phase;
  const double u_end = u0 + kTwoPi;
  double next = kHalfPi + kPi * std::floor((u0 - kHalfPi) / kPi + 1.0);
  std::vector<Segment> out;
  double u = u0;
  while (u < u_end) {
    const double stop = std::min(next, u_end);
    const double len = stop - u;
    if (len > 0.0) {
      const double mid = reduce_phase(0.5 * (u + stop));
      out.push_back({len / w.omega, w.delta * square_shape(mid)});
    }
    u = stop;
    next += kPi;
  }
  return out;
}

}  // namespace latchsim
