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

// latchsim command-line front end.

#include <cstdio>
#include <iostream>
#include <regex>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "latchsim/common.hpp"
#include "latchsim/runner.hpp"

namespace {

using namespace latchsim;

struct Overrides {
  std::string config;
  std::string out;
  std::string layer;
  std::string grid;
  unsigned threads = 0;
};

Config prepare(const Overrides& o, bool grid_allowed) {
  Config cfg = load_config(o.config);
  if (!o.out.empty()) cfg.output.dir = o.out;
  if (o.threads > 0) cfg.sweep.threads = o.threads;
  if (!o.layer.empty()) {
    cfg.sweep.layer = parse_layer(o.layer);
    cfg.sidebands.layers.clear();
    std::stringstream ss(o.layer);
    for (std::string item; std::getline(ss, item, ',');) cfg.sidebands.layers.push_back(parse_layer(item));
    cfg.sweep.layer = cfg.sidebands.layers.front();
  }
  if (!o.grid.empty()) {
    if (!grid_allowed) throw InvalidArgument("--grid only applies to the spectrum subcommand");
    static const std::regex re(R"((\d+)x(\d+))");
    std::smatch m;
    if (!std::regex_match(o.grid, m, re)) throw InvalidArgument("--grid expects NxM, got '" + o.grid + "'");
    cfg.sweep.nu.points = std::stoul(m[1]);
    cfg.sweep.y.points = std::stoul(m[2]);
    if (cfg.sweep.nu.points == 0 || cfg.sweep.y.points == 0) throw InvalidArgument("--grid sizes must be >= 1");
  }
  return cfg;
}

void print_files(const std::vector<std::filesystem::path>& files) {
  for (const auto& f : files) std::cout << "wrote " << f.string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Latching-modulation spectroscopy of a driven two-level system"};
  app.set_version_flag("--version", std::string(latchsim::version()));
  app.require_subcommand(1);

  Overrides o;
  app.add_option("--config", o.config, "configuration file")->required()->check(CLI::ExistingFile);
  app.add_option("--out", o.out, "output directory (overrides [output] dir)");
  app.add_option("--layer", o.layer, "solver layer: adiabatic, rwa, lindblad2 or lindblad5 (comma list for sidebands)");
  app.add_option("--grid", o.grid, "spectrum grid size NxM (N detunings, M sweep values)");
  app.add_option("--threads", o.threads, "worker threads (default LATCHSIM_THREADS or all cores)");

  auto* spectrum = app.add_subcommand("spectrum", "sweep a (nu, Omega) or (nu, delta) grid")->fallthrough();
  auto* resonances = app.add_subcommand("resonances", "export analytic resonance curves")->fallthrough();
  auto* sidebands = app.add_subcommand("sidebands", "trace observables along nu = -m Omega")->fallthrough();
  auto* sudden = app.add_subcommand("sudden", "finite-ramp error of the sudden switch")->fallthrough();
  auto* fit = app.add_subcommand("fit-transmon", "fit transmon parameters to a flux spectrum")->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (spectrum->parsed()) {
      const SpectrumRun run = run_spectrum(prepare(o, true));
      std::cout << "layer " << to_string(run.grid.layer) << ", " << run.grid.rows() << "x" << run.grid.cols()
                << " cells, " << run.grid.nan_count() << " nan\n";
      print_files(run.files);
    } else if (resonances->parsed()) {
      std::vector<std::filesystem::path> files;
      for (const auto& t : run_resonance_overlay(prepare(o, false))) files.push_back(t.file);
      print_files(files);
    } else if (sidebands->parsed()) {
      const SidebandRun run = run_sideband_trace(prepare(o, false));
      print_files({run.file});
    } else if (sudden->parsed()) {
      const SuddenRun run = run_sudden_check(prepare(o, false));
      print_files({run.file});
    } else if (fit->parsed()) {
      const FitRun run = run_fit_transmon(prepare(o, false));
      std::printf("E_C/h = %.6g Hz, E_Jsum/h = %.6g Hz, d = %.6g, rms = %.4g Hz, %s after %d iterations\n",
                  angular_to_hz(run.fit.e_c), angular_to_hz(run.fit.e_j_sum), run.fit.asym,
                  angular_to_hz(run.fit.rms_residual), run.fit.converged ? "converged" : "not converged",
                  run.fit.iterations);
      print_files({run.file});
    }
  } catch (const InvalidArgument& e) {
    std::cerr << "latchsim: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "latchsim: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
