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

#include <cstddef>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace latchsim {

enum class Observable { Population, DispersiveShiftHz };
enum class SolverLayer { AdiabaticImpulse, RWA, Lindblad2, Lindblad5 };

/// What the second sweep axis varies; the first axis is always the detuning.
enum class YAxis { ModulationFrequency, ModulationAmplitude };

std::string_view to_string(Observable o);
std::string_view to_string(SolverLayer l);
std::string_view to_string(YAxis y);
Observable parse_observable(std::string_view s);
SolverLayer parse_layer(std::string_view s);
YAxis parse_y_axis(std::string_view s);

/// Sweep axes in angular units. `nu` is the detuning axis; `y` holds either
/// Omega or delta values depending on `y_kind`.
struct SweepAxes {
  std::vector<double> nu;
  std::vector<double> y;
  YAxis y_kind = YAxis::ModulationFrequency;
};

/// `n` evenly spaced values covering [lo, hi] inclusive (n = 1 gives lo).
std::vector<double> linspace(double lo, double hi, std::size_t n);

/// Two-dimensional sweep result. Axes are stored in Hz (nu/2pi and
/// Omega/2pi or delta/2pi); values are row-major with y outer.
struct SpectrumGrid {
  std::vector<double> x_axis;
  std::vector<double> y_axis;
  std::vector<double> values;
  Observable observable = Observable::Population;
  SolverLayer layer = SolverLayer::AdiabaticImpulse;
  YAxis y_kind = YAxis::ModulationFrequency;
  nlohmann::json meta = nlohmann::json::object();

  std::size_t rows() const { return y_axis.size(); }
  std::size_t cols() const { return x_axis.size(); }
  double& at(std::size_t row, std::size_t col) { return values[row * cols() + col]; }
  double at(std::size_t row, std::size_t col) const { return values[row * cols() + col]; }
  std::size_t nan_count() const;

  /// Allocates a NaN-filled grid for `axes`, converting the axes to Hz.
  static SpectrumGrid for_axes(const SweepAxes& axes, Observable obs, SolverLayer layer);

  /// Checks shape, axis monotonicity and the population range. RWA grids
  /// are only bounded below: overlapping saturated sidebands add past 1.
  void validate() const;
};

}  // namespace latchsim
