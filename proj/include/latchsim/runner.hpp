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

// The sweeps behind each command-line subcommand. Every run_* function
// computes its result, writes it under cfg.output.dir and returns it.

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "latchsim/io.hpp"

namespace latchsim {

/// Dispatches a grid sweep to the solver of `layer`.
SpectrumGrid compute_spectrum(const Config& cfg, SolverLayer layer, const SweepAxes& axes, unsigned threads);

/// The configured (nu, y) sweep with all frequencies converted to rad/s.
SweepAxes sweep_axes(const Config& cfg);

struct SpectrumRun {
  SpectrumGrid grid;
  std::vector<std::filesystem::path> files;
};

SpectrumRun run_spectrum(const Config& cfg);

struct ResonanceTable {
  ResonanceFamily family;
  int index;
  std::vector<ResonancePoint> points;
  std::filesystem::path file;
};

/// One table and one CSV (Omega_Hz, nu_Hz) per configured family and index.
std::vector<ResonanceTable> run_resonance_overlay(const Config& cfg);

/// Observables along nu = -m Omega.
struct SidebandTrace {
  int m = 0;
  bool averaged = false;
  std::vector<double> omega_hz;
  std::vector<SolverLayer> layers;
  std::vector<std::vector<double>> values;  ///< values[layer][omega]
  std::vector<int> extrapolated;            ///< RWA below Omega = g
};

SidebandTrace sideband_trace(const Config& cfg, unsigned threads);

struct SidebandRun {
  SidebandTrace trace;
  std::filesystem::path file;
};

SidebandRun run_sideband_trace(const Config& cfg);

struct SuddenTable {
  std::vector<double> nu_hz;
  std::vector<double> t_ramp;
  std::vector<std::vector<double>> formula;  ///< formula[t][nu]
  std::vector<std::vector<double>> oracle;
};

SuddenTable sudden_table(const Config& cfg, unsigned threads);

struct SuddenRun {
  SuddenTable table;
  std::filesystem::path file;
};

SuddenRun run_sudden_check(const Config& cfg);

struct FitRun {
  TransmonFit fit;
  std::size_t points = 0;
  std::filesystem::path file;
};

/// Fits the [fit] data file starting from the [transmon] section.
FitRun run_fit_transmon(const Config& cfg);

}  // namespace latchsim
