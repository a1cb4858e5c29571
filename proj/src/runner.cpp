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

#include "latchsim/runner.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>

#include "latchsim/common.hpp"
#include "latchsim/dynamics.hpp"
#include "latchsim/parallel.hpp"
#include "latchsim/rwa.hpp"

namespace latchsim {
namespace {

std::filesystem::path out_file(const Config& cfg, const std::string& stem) {
  return std::filesystem::path(cfg.output.dir) / (cfg.output.prefix + "_" + stem);
}

std::string layer_name(SolverLayer l) { return std::string(to_string(l)); }

}  // namespace

SweepAxes sweep_axes(const Config& cfg) {
  SweepAxes axes;
  axes.nu = cfg.sweep.nu.angular();
  axes.y = cfg.sweep.y.angular();
  axes.y_kind = cfg.sweep.y_kind;
  return axes;
}

SpectrumGrid compute_spectrum(const Config& cfg, SolverLayer layer, const SweepAxes& axes, unsigned threads) {
  SpectrumGrid grid;
  switch (layer) {
    case SolverLayer::AdiabaticImpulse:
      grid = latch_spectrum(cfg.qubit, cfg.waveform, axes, threads);
      break;
    case SolverLayer::RWA:
      grid = rwa_spectrum(cfg.qubit, cfg.waveform, axes, threads);
      break;
    case SolverLayer::Lindblad2:
    case SolverLayer::Lindblad5:
      grid = dissipative_spectrum(layer, cfg.qubit, cfg.waveform, axes, cfg.transmon, threads);
      break;
  }
  const nlohmann::json record = config_record(cfg);
  for (const auto& [key, value] : record.items()) {
    if (!grid.meta.contains(key)) grid.meta[key] = value;
  }
  return grid;
}

SpectrumRun run_spectrum(const Config& cfg) {
  SpectrumRun run;
  run.grid = compute_spectrum(cfg, cfg.sweep.layer, sweep_axes(cfg), resolve_thread_count(cfg.sweep.threads));
  const std::string stem = "spectrum_" + layer_name(cfg.sweep.layer);
  run.files = {out_file(cfg, stem + ".csv"), out_file(cfg, stem + ".json")};
  write_grid_csv(run.files[0], run.grid);
  write_grid_json(run.files[1], run.grid);
  return run;
}

std::vector<ResonanceTable> run_resonance_overlay(const Config& cfg) {
  const std::vector<double> omegas = cfg.resonances.omega.angular();
  std::vector<ResonanceTable> out;
  for (ResonanceFamily family : cfg.resonances.families) {
    for (int index : cfg.resonances.indices) {
      ResonanceTable t{family, index, {}, {}};
      t.points = resonance_curves(cfg.qubit, cfg.waveform.delta, family, index, omegas);
      t.file = out_file(cfg, "res_" + std::string(to_string(family)) + "_" + std::to_string(index) + ".csv");
      nlohmann::json meta = config_record(cfg);
      meta["family"] = std::string(to_string(family));
      meta["index"] = index;
      std::vector<std::vector<double>> rows;
      rows.reserve(t.points.size());
      for (const ResonancePoint& p : t.points) rows.push_back({angular_to_hz(p.omega_mod), angular_to_hz(p.nu)});
      write_csv(t.file, meta, {"Omega_Hz", "nu_Hz"}, rows);
      out.push_back(std::move(t));
    }
  }
  return out;
}

SidebandTrace sideband_trace(const Config& cfg, unsigned threads) {
  SidebandTrace tr;
  tr.m = cfg.sidebands.m;
  tr.averaged = cfg.sidebands.average_pm && cfg.sidebands.m != 0;
  tr.layers = cfg.sidebands.layers;
  tr.omega_hz = cfg.sidebands.omega.hz();
  const std::vector<double> omegas = cfg.sidebands.omega.angular();
  for (double om : omegas) tr.extrapolated.push_back(rwa_extrapolated(cfg.qubit, om) ? 1 : 0);

  for (SolverLayer layer : tr.layers) {
    std::vector<double> col(omegas.size(), std::numeric_limits<double>::quiet_NaN());
    parallel_for(omegas.size(), threads, [&](std::size_t i) {
      const double om = omegas[i];
      Config local = cfg;
      local.waveform.omega = om;
      SweepAxes axes;
      const double nu = -tr.m * om;
      axes.nu = tr.averaged ? std::vector<double>{std::min(nu, -nu), std::max(nu, -nu)} : std::vector<double>{nu};
      axes.y = {om};
      const SpectrumGrid g = compute_spectrum(local, layer, axes, 1);
      col[i] = std::accumulate(g.values.begin(), g.values.end(), 0.0) / static_cast<double>(g.values.size());
    });
    tr.values.push_back(std::move(col));
  }
  return tr;
}

SidebandRun run_sideband_trace(const Config& cfg) {
  SidebandRun run;
  run.trace = sideband_trace(cfg, resolve_thread_count(cfg.sweep.threads));
  const SidebandTrace& tr = run.trace;
  run.file = out_file(cfg, "sideband_m" + std::to_string(tr.m) + ".csv");
  nlohmann::json meta = config_record(cfg);
  meta["m"] = tr.m;
  meta["average_pm"] = tr.averaged;
  std::vector<std::string> header{"Omega_Hz"};
  bool has_rwa = false;
  for (SolverLayer l : tr.layers) {
    header.push_back(layer_name(l));
    has_rwa = has_rwa || l == SolverLayer::RWA;
  }
  if (has_rwa) {
    header.push_back("rwa_extrapolated");
    meta["rwa_extrapolated"] = "1 where Omega < g; the RWA column is outside its validity range there";
  }
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < tr.omega_hz.size(); ++i) {
    std::vector<double> row{tr.omega_hz[i]};
    for (const auto& col : tr.values) row.push_back(col[i]);
    if (has_rwa) row.push_back(tr.extrapolated[i]);
    rows.push_back(std::move(row));
  }
  write_csv(run.file, meta, header, rows);
  return run;
}

SuddenTable sudden_table(const Config& cfg, unsigned threads) {
  SuddenTable t;
  t.nu_hz = cfg.sudden.nu.hz();
  t.t_ramp = cfg.sudden.t_ramp;
  const double delta = cfg.waveform.delta;
  for (double tr : t.t_ramp) {
    const RampSpec ramp{tr, cfg.sudden.side};
    std::vector<double> formula(t.nu_hz.size()), oracle(t.nu_hz.size());
    parallel_for(t.nu_hz.size(), threads, [&](std::size_t i) {
      const QubitParams q = cfg.qubit.with_detuning(hz_to_angular(t.nu_hz[i]));
      formula[i] = sudden_error(q, delta, ramp);
      oracle[i] = tr > 0.0 ? ramp_transition_oracle(q, delta, ramp) : 0.0;
    });
    t.formula.push_back(std::move(formula));
    t.oracle.push_back(std::move(oracle));
  }
  return t;
}

SuddenRun run_sudden_check(const Config& cfg) {
  SuddenRun run;
  run.table = sudden_table(cfg, resolve_thread_count(cfg.sweep.threads));
  const SuddenTable& t = run.table;
  run.file = out_file(cfg, "sudden.csv");
  nlohmann::json meta = config_record(cfg);
  meta["t_ramp_s"] = t.t_ramp;
  meta["side"] = cfg.sudden.side == RampSide::RightStart ? "right" : "left";
  std::vector<std::string> header{"nu_Hz"};
  for (std::size_t k = 0; k < t.t_ramp.size(); ++k) {
    const std::string tag = "_T" + format_number(t.t_ramp[k]);
    header.push_back("w_formula" + tag);
    header.push_back("w_oracle" + tag);
  }
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < t.nu_hz.size(); ++i) {
    std::vector<double> row{t.nu_hz[i]};
    for (std::size_t k = 0; k < t.t_ramp.size(); ++k) {
      row.push_back(t.formula[k][i]);
      row.push_back(t.oracle[k][i]);
    }
    rows.push_back(std::move(row));
  }
  write_csv(run.file, meta, header, rows);
  return run;
}

FitRun run_fit_transmon(const Config& cfg) {
  if (!cfg.transmon) throw ConfigError(cfg.source + ": fit-transmon needs a [transmon] section as the initial guess");
  if (cfg.fit.data.empty()) throw ConfigError(cfg.source + ": fit-transmon needs [fit] data");
  const std::vector<FluxPoint> data = read_flux_points(cfg.fit.data);
  FitRun run;
  run.points = data.size();
  run.fit = fit_transmon(data, *cfg.transmon, cfg.fit.cutoff, cfg.fit.max_iterations);
  run.file = out_file(cfg, "fit.json");
  nlohmann::json j;
  j["e_c_hz"] = angular_to_hz(run.fit.e_c);
  j["e_j_sum_hz"] = angular_to_hz(run.fit.e_j_sum);
  j["asym"] = run.fit.asym;
  j["rms_residual_hz"] = angular_to_hz(run.fit.rms_residual);
  j["iterations"] = run.fit.iterations;
  j["converged"] = run.fit.converged;
  j["points"] = run.points;
  j["version"] = std::string(version());
  if (run.file.has_parent_path()) std::filesystem::create_directories(run.file.parent_path());
  std::ofstream out(run.file);
  if (!out) throw Error("cannot write " + run.file.string());
  out << j.dump(1) << '\n';
  return run;
}

}  // namespace latchsim
