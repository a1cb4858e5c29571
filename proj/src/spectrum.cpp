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

#include "latchsim/spectrum.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "latchsim/common.hpp"

namespace latchsim {

std::string_view to_string(Observable o) {
  switch (o) {
    case Observable::Population:
      return "population";
    case Observable::DispersiveShiftHz:
      return "dispersive-shift-hz";
  }
  return "unknown";
}

std::string_view to_string(SolverLayer l) {
  switch (l) {
    case SolverLayer::AdiabaticImpulse:
      return "adiabatic";
    case SolverLayer::RWA:
      return "rwa";
    case SolverLayer::Lindblad2:
      return "lindblad2";
    case SolverLayer::Lindblad5:
      return "lindblad5";
  }
  return "unknown";
}

std::string_view to_string(YAxis y) {
  switch (y) {
    case YAxis::ModulationFrequency:
      return "omega";
    case YAxis::ModulationAmplitude:
      return "delta";
  }
  return "unknown";
}

Observable parse_observable(std::string_view s) {
  for (auto o : {Observable::Population, Observable::DispersiveShiftHz}) {
    if (s == to_string(o)) return o;
  }
  throw InvalidArgument("unknown observable '" + std::string(s) + "'");
}

SolverLayer parse_layer(std::string_view s) {
  for (auto l : {SolverLayer::AdiabaticImpulse, SolverLayer::RWA, SolverLayer::Lindblad2, SolverLayer::Lindblad5}) {
    if (s == to_string(l)) return l;
  }
  throw InvalidArgument("unknown solver layer '" + std::string(s) +
                        "' (expected adiabatic, rwa, lindblad2 or lindblad5)");
}

YAxis parse_y_axis(std::string_view s) {
  for (auto y : {YAxis::ModulationFrequency, YAxis::ModulationAmplitude}) {
    if (s == to_string(y)) return y;
  }
  throw InvalidArgument("unknown sweep axis '" + std::string(s) + "' (expected omega or delta)");
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  if (n > 0) out.back() = hi;
  return out;
}

std::size_t SpectrumGrid::nan_count() const {
  std::size_t n = 0;
  for (double v : values) n += std::isnan(v) ? 1 : 0;
  return n;
}

SpectrumGrid SpectrumGrid::for_axes(const SweepAxes& axes, Observable obs, SolverLayer layer) {
  SpectrumGrid g;
  g.x_axis.reserve(axes.nu.size());
  for (double v : axes.nu) g.x_axis.push_back(angular_to_hz(v));
  g.y_axis.reserve(axes.y.size());
  for (double v : axes.y) g.y_axis.push_back(angular_to_hz(v));
  g.values.assign(axes.nu.size() * axes.y.size(), std::nan(""));
  g.observable = obs;
  g.layer = layer;
  g.y_kind = axes.y_kind;
  return g;
}

void SpectrumGrid::validate() const {
  if (values.size() != rows() * cols()) throw InvalidArgument("grid: value count does not match the axes");
  auto monotone = [](const std::vector<double>& axis) {
    for (std::size_t i = 1; i < axis.size(); ++i) {
      if (!(axis[i] > axis[i - 1])) return false;
    }
    return true;
  };
  if (!monotone(x_axis) || !monotone(y_axis)) throw InvalidArgument("grid: axes must be strictly increasing");
  if (observable == Observable::Population) {
    const double upper = layer == SolverLayer::RWA ? std::numeric_limits<double>::infinity() : 1.0 + 1e-9;
    for (double v : values) {
      if (!std::isnan(v) && (v < -1e-9 || v > upper)) {
        throw InvalidArgument("grid: population outside [0, 1]");
      }
    }
  }
}

}  // namespace latchsim
