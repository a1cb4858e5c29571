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

// Run configuration and file formats for the command-line front end.

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "latchsim/common.hpp"
#include "latchsim/latch_model.hpp"
#include "latchsim/qubit.hpp"
#include "latchsim/spectrum.hpp"
#include "latchsim/sudden.hpp"
#include "latchsim/transmon.hpp"
#include "latchsim/waveform.hpp"

namespace latchsim {

/// Evenly spaced axis in Hz.
struct AxisSpec {
  double min_hz = 0.0;
  double max_hz = 0.0;
  std::size_t points = 1;

  std::vector<double> hz() const { return linspace(min_hz, max_hz, points); }
  std::vector<double> angular() const;
};

struct SweepConfig {
  SolverLayer layer = SolverLayer::AdiabaticImpulse;
  AxisSpec nu;
  AxisSpec y;
  YAxis y_kind = YAxis::ModulationFrequency;
  unsigned threads = 0;  ///< 0 defers to LATCHSIM_THREADS / hardware
};

struct ResonanceConfig {
  std::vector<ResonanceFamily> families;
  std::vector<int> indices;
  AxisSpec omega;
};

struct SidebandConfig {
  int m = 2;
  bool average_pm = false;
  AxisSpec omega;
  std::vector<SolverLayer> layers;
};

struct SuddenConfig {
  std::vector<double> t_ramp;  ///< seconds
  AxisSpec nu;
  RampSide side = RampSide::RightStart;
};

struct FitConfig {
  std::string data;  ///< CSV with columns flux, frequency_Hz
  int cutoff = 20;
  int max_iterations = 2000;
};

struct OutputConfig {
  std::string dir = ".";
  std::string prefix = "latchsim";
};

/// Parsed configuration. Every quantity is converted to library units
/// (rad/s, seconds, kelvin) on load.
struct Config {
  ModulationWaveform waveform;
  QubitParams qubit;
  std::optional<TransmonParams> transmon;
  AmplitudeConvention convention = AmplitudeConvention::Halved;
  SweepConfig sweep;
  ResonanceConfig resonances;
  SidebandConfig sidebands;
  SuddenConfig sudden;
  FitConfig fit;
  OutputConfig output;
  std::string source;  ///< file the config was read from, if any
};

/// Raised for malformed configuration. The message names the file, line and
/// field when they are known.
class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

Config parse_config(const std::string& text, const std::string& source = "<config>");
Config load_config(const std::filesystem::path& path);

/// Parameter record stored in output metadata.
nlohmann::json config_record(const Config& cfg);

/// Fixed-width number formatting used by every CSV writer: 12 significant
/// digits, NaN as `nan`.
std::string format_number(double v);

/// Writes `#`-prefixed metadata lines (one per top-level key of `meta`), a
/// header row and the data rows.
void write_csv(const std::filesystem::path& path, const nlohmann::json& meta, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

/// Long-format CSV of a grid: nu_Hz, Omega_Hz or delta_Hz, value.
void write_grid_csv(const std::filesystem::path& path, const SpectrumGrid& grid);

/// JSON serialization. NaN cells become null; `generated` carries the
/// wall-clock time and is the only field that differs between runs.
nlohmann::json grid_to_json(const SpectrumGrid& grid);
SpectrumGrid grid_from_json(const nlohmann::json& j);
void write_grid_json(const std::filesystem::path& path, const SpectrumGrid& grid);
SpectrumGrid read_grid_json(const std::filesystem::path& path);

/// Reads a flux spectrum (columns flux, frequency_Hz; `#` comments allowed).
std::vector<FluxPoint> read_flux_points(const std::filesystem::path& path);

}  // namespace latchsim
