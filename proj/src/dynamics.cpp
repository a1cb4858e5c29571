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

#include "latchsim/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "latchsim/common.hpp"
#include "latchsim/parallel.hpp"

namespace latchsim {
namespace {

constexpr int kMaxMagnusSteps = 1 << 18;
constexpr double kFixedPointGap = 1e-10;

CMatrix identity(Eigen::Index n) { return CMatrix::Identity(n, n); }

// vec(A X B) = (B^T kron A) vec(X), column-major vec.
CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CMatrix commutator_super(const CMatrix& h) {
  const CMatrix id = identity(h.rows());
  return cplx(0.0, -1.0) * (kron(id, h) - kron(h.transpose(), id));
}

CMatrix dissipator(const CMatrix& c) {
  const CMatrix id = identity(c.rows());
  const CMatrix cdc = c.adjoint() * c;
  return kron(c.conjugate(), c) - 0.5 * kron(id, cdc) - 0.5 * kron(cdc.transpose(), id);
}

double one_norm(const CMatrix& a) { return a.cwiseAbs().colwise().sum().maxCoeff(); }

// [[L, 0], [I, 0]]: its exponential carries exp(L t) and int_0^t exp(L s) ds.
CMatrix augmented(const CMatrix& l) {
  const Eigen::Index n = l.rows();
  CMatrix b = CMatrix::Zero(2 * n, 2 * n);
  b.topLeftCorner(n, n) = l;
  b.bottomLeftCorner(n, n) = identity(n);
  return b;
}

struct MapPiece {
  CMatrix map;
  CMatrix integral;
};

// Appends `next` (later in time) after `acc`.
void compose(MapPiece& acc, const CMatrix& exp_aug) {
  const Eigen::Index n = acc.map.rows();
  const CMatrix step_map = exp_aug.topLeftCorner(n, n);
  const CMatrix step_int = exp_aug.bottomLeftCorner(n, n);
  acc.integral += step_int * acc.map;
  acc.map = step_map * acc.map;
}

MapPiece identity_piece(Eigen::Index n) { return {identity(n), CMatrix::Zero(n, n)}; }

// Breakpoints in [0, T] where the waveform is not smooth.
std::vector<double> breakpoints(const ModulationWaveform& w) {
  const double period = w.period();
  std::vector<double> pts{0.0, period};
  if (w.kind != WaveformKind::Sine) {
    for (double u : {0.5 * kPi, 1.5 * kPi}) {
      const double center = (u - w.phase) / w.omega;
      for (double t : {center - 0.5 * w.ramp, center + 0.5 * w.ramp}) {
        double r = std::fmod(t, period);
        if (r < 0.0) r += period;
        pts.push_back(r);
      }
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end(), [&](double a, double b) { return b - a < 1e-15 * period; }),
            pts.end());
  return pts;
}

MapPiece magnus_period(const GeneratorPair& gen, const ModulationWaveform& w, const std::vector<double>& pts,
                       int steps_per_period) {
  const Eigen::Index n = gen.constant.rows();
  const double period = w.period();
  const double c1 = 0.5 - std::sqrt(3.0) / 6.0;
  const double c2 = 0.5 + std::sqrt(3.0) / 6.0;
  const double comm_weight = std::sqrt(3.0) / 12.0;
  MapPiece acc = identity_piece(n);
  for (std::size_t p = 0; p + 1 < pts.size(); ++p) {
    const double len = pts[p + 1] - pts[p];
    const int steps = std::max(1, static_cast<int>(std::ceil(steps_per_period * len / period)));
    const double h = len / steps;
    for (int s = 0; s < steps; ++s) {
      const double t0 = pts[p] + s * h;
      const CMatrix b1 = augmented(gen.constant + evaluate(w, t0 + c1 * h) * gen.slope);
      const CMatrix b2 = augmented(gen.constant + evaluate(w, t0 + c2 * h) * gen.slope);
      const CMatrix omega4 = 0.5 * h * (b1 + b2) + comm_weight * h * h * (b2 * b1 - b1 * b2);
      compose(acc, expm(omega4));
    }
  }
  return acc;
}

}  // namespace

double DensityMatrix::hermiticity_defect() const { return max_abs(rho - rho.adjoint()); }

double DensityMatrix::trace_defect() const { return std::abs(rho.trace() - cplx(1.0, 0.0)); }

double DensityMatrix::min_eigenvalue() const {
  const CMatrix herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(herm, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

std::vector<double> ladder_frequencies(double omega0, double e_c, int count) {
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out[i] = i * (omega0 + (1.0 - i) * 0.5 * e_c);
  return out;
}

MultilevelModel two_level_model(const QubitParams& q) {
  q.validate();
  MultilevelModel m;
  m.n_levels = 2;
  m.level_freqs = {-0.5 * q.omega0, 0.5 * q.omega0};
  m.excitation = {-0.5, 0.5};
  m.drive_coupling = q.g;
  const double nbar = thermal_occupation(q.omega0, q.t_bath);
  m.down_rates = {q.gamma1 * (nbar + 1.0)};
  m.up_rates = {q.gamma1 * nbar};
  m.gamma_phi = q.gamma_phi;
  return m;
}

MultilevelModel transmon_ladder_model(const QubitParams& q, double e_c, int n_levels) {
  q.validate();
  if (n_levels < 2) throw InvalidArgument("transmon_ladder_model: need at least two levels");
  if (!(e_c >= 0.0)) throw InvalidArgument("transmon_ladder_model: e_c must be >= 0");
  MultilevelModel m;
  m.n_levels = n_levels;
  m.level_freqs = ladder_frequencies(q.omega0, e_c, n_levels);
  m.excitation.resize(n_levels);
  for (int i = 0; i < n_levels; ++i) m.excitation[i] = i;
  m.drive_coupling = q.g;
  for (int i = 1; i < n_levels; ++i) {
    const double nbar = thermal_occupation(m.level_freqs[i] - m.level_freqs[i - 1], q.t_bath);
    m.down_rates.push_back(i * q.gamma1 * (nbar + 1.0));
    m.up_rates.push_back(i * q.gamma1 * nbar);
  }
  m.gamma_phi = q.gamma_phi;
  return m;
}

CMatrix hamiltonian(const MultilevelModel& model, double omega, double f) {
  const int n = model.n_levels;
  if (n < 2 || static_cast<int>(model.level_freqs.size()) != n || static_cast<int>(model.excitation.size()) != n) {
    throw InvalidArgument("hamiltonian: inconsistent model dimension");
  }
  CMatrix h = CMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) h(i, i) = model.level_freqs[i] + model.excitation[i] * (f - omega);
  h(0, 1) = h(1, 0) = 0.5 * model.drive_coupling;
  return h;
}

CMatrix hamiltonian_at(const MultilevelModel& model, const QubitParams& q, const ModulationWaveform& w, double t) {
  return hamiltonian(model, q.omega, evaluate(w, t));
}

CMatrix lindblad_generator(const MultilevelModel& model, const CMatrix& h) {
  const int n = model.n_levels;
  if (h.rows() != n || h.cols() != n) throw InvalidArgument("lindblad_generator: Hamiltonian dimension mismatch");
  if (static_cast<int>(model.down_rates.size()) != n - 1 || static_cast<int>(model.up_rates.size()) != n - 1) {
    throw InvalidArgument("lindblad_generator: need one rate pair per transition");
  }
  if (!(model.gamma_phi >= 0.0)) throw InvalidArgument("lindblad_generator: negative dephasing rate");
  CMatrix l = commutator_super(h);
  for (int i = 1; i < n; ++i) {
    const double down = model.down_rates[i - 1];
    const double up = model.up_rates[i - 1];
    if (!(down >= 0.0) || !(up >= 0.0)) throw InvalidArgument("lindblad_generator: negative transition rate");
    CMatrix lower = CMatrix::Zero(n, n);
    lower(i - 1, i) = 1.0;
    if (down > 0.0) l += down * dissipator(lower);
    if (up > 0.0) l += up * dissipator(lower.adjoint());
  }
  if (model.gamma_phi > 0.0) {
    // 2 gamma_phi D[n] damps the 0-1 coherence at gamma_phi, the sigma_z form for two levels
    CMatrix number = CMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) number(i, i) = i;
    l += 2.0 * model.gamma_phi * dissipator(number);
  }
  return l;
}

GeneratorPair generator_pair(const MultilevelModel& model, const QubitParams& q) {
  GeneratorPair gen;
  gen.constant = lindblad_generator(model, hamiltonian(model, q.omega, 0.0));
  CMatrix z = CMatrix::Zero(model.n_levels, model.n_levels);
  for (int i = 0; i < model.n_levels; ++i) z(i, i) = model.excitation[i];
  gen.slope = commutator_super(z);
  return gen;
}

PeriodMap period_map(const MultilevelModel& model, const QubitParams& q, const ModulationWaveform& w,
                     double tolerance) {
  w.validate();
  const GeneratorPair gen = generator_pair(model, q);
  const Eigen::Index n = gen.constant.rows();
  PeriodMap out;
  out.period = w.period();

  if (w.kind == WaveformKind::Square) {
    MapPiece acc = identity_piece(n);
    for (const Segment& s : square_segments(w, 0.0)) {
      compose(acc, expm(augmented(gen.constant + s.f * gen.slope) * s.duration));
    }
    out.map = std::move(acc.map);
    out.integral = std::move(acc.integral);
    return out;
  }

  const std::vector<double> pts = breakpoints(w);
  const double norm = one_norm(gen.constant) + w.delta * one_norm(gen.slope);
  int steps = std::max(8, static_cast<int>(std::ceil(norm * out.period)));
  MapPiece coarse = magnus_period(gen, w, pts, steps);
  double change = std::numeric_limits<double>::infinity();
  while (steps < kMaxMagnusSteps) {
    steps *= 2;
    MapPiece fine = magnus_period(gen, w, pts, steps);
    change = max_abs(fine.map - coarse.map);
    coarse = std::move(fine);
    if (change <= tolerance) {
      out.map = std::move(coarse.map);
      out.integral = std::move(coarse.integral);
      out.steps = steps;
      return out;
    }
  }
  throw ConvergenceError("period_map: Magnus stepping did not converge", change);
}

SteadyState steady_state(const MultilevelModel& model, const QubitParams& q, const ModulationWaveform& w) {
  const PeriodMap pm = period_map(model, q, w);
  const Eigen::Index n2 = pm.map.rows();
  const int n = model.n_levels;
  const CMatrix a = pm.map - identity(n2);
  Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  if (sv[n2 - 2] < kFixedPointGap * std::max(1.0, sv[0])) {
    throw Error("steady_state: period map has a degenerate fixed-point subspace");
  }
  const CVector v = svd.matrixV().col(n2 - 1);
  // the null vector carries an arbitrary complex phase; the trace removes it
  CMatrix rho = Eigen::Map<const CMatrix>(v.data(), n, n);
  rho /= rho.trace();
  rho = (0.5 * (rho + rho.adjoint())).eval();

  SteadyState out;
  out.rho.rho = rho;
  const CVector avg = pm.integral * Eigen::Map<const CVector>(rho.data(), n * n) / pm.period;
  out.populations.resize(n);
  for (int i = 0; i < n; ++i) out.populations[i] = avg[i * n + i].real();
  return out;
}

std::vector<double> chi_shifts(double omega0, double e_c, double g0, double omega_r, int n_levels) {
  const std::vector<double> w = ladder_frequencies(omega0, e_c, n_levels + 1);
  auto denom = [&](int i) {
    const double d = w[i] - w[i - 1] - omega_r;
    if (std::abs(d) < 1e-6 * std::abs(omega_r)) {
      throw InvalidArgument("chi_shifts: resonator collides with ladder transition " + std::to_string(i - 1) +
                            "-" + std::to_string(i));
    }
    return d;
  };
  std::vector<double> chi(static_cast<std::size_t>(n_levels));
  for (int i = 0; i < n_levels; ++i) {
    const double lower = i == 0 ? 0.0 : i / denom(i);
    chi[i] = g0 * g0 * (lower - (i + 1) / denom(i + 1));
  }
  return chi;
}

double dispersive_shift(double omega0, const TransmonParams& tp, std::span<const double> populations) {
  double total = 0.0;
  for (double p : populations) total += p;
  if (std::abs(total - 1.0) > 1e-8) throw InvalidArgument("dispersive_shift: populations must sum to 1");
  const std::vector<double> chi =
      chi_shifts(omega0, tp.e_c, tp.g0, tp.omega_r, static_cast<int>(populations.size()));
  double shift = 0.0;
  for (std::size_t i = 0; i < populations.size(); ++i) shift += populations[i] * chi[i];
  return shift;
}

double dispersive_shift(const TransmonParams& tp, std::span<const double> populations) {
  return dispersive_shift(qubit_frequency(tp), tp, populations);
}

SpectrumGrid dissipative_spectrum(SolverLayer layer, const QubitParams& q, const ModulationWaveform& base,
                                  const SweepAxes& axes, const std::optional<TransmonParams>& readout,
                                  unsigned threads) {
  if (layer != SolverLayer::Lindblad2 && layer != SolverLayer::Lindblad5) {
    throw InvalidArgument("dissipative_spectrum: layer must be lindblad2 or lindblad5");
  }
  if (axes.nu.empty() || axes.y.empty()) throw InvalidArgument("dissipative_spectrum: empty grid");
  if (!(q.gamma1 > 0.0)) throw InvalidArgument("dissipative_spectrum: gamma1 must be > 0");
  const bool five = layer == SolverLayer::Lindblad5;
  if (five && !readout) throw InvalidArgument("dissipative_spectrum: lindblad5 needs transmon readout parameters");

  const MultilevelModel model = five ? transmon_ladder_model(q, readout->e_c, readout->n_levels) : two_level_model(q);
  SpectrumGrid grid =
      SpectrumGrid::for_axes(axes, five ? Observable::DispersiveShiftHz : Observable::Population, layer);

  double background = 0.0;
  if (five) {
    MultilevelModel undriven = model;
    undriven.drive_coupling = 0.0;
    ModulationWaveform still = base;
    still.kind = WaveformKind::Square;
    still.delta = 0.0;
    still.ramp = 0.0;
    const SteadyState ss = steady_state(undriven, q, still);
    background = dispersive_shift(q.omega0, *readout, ss.populations);
    grid.meta["background_shift_hz"] = angular_to_hz(background);
  }

  const std::size_t cols = axes.nu.size();
  const bool sweep_omega = axes.y_kind == YAxis::ModulationFrequency;
  parallel_for(grid.values.size(), threads, [&](std::size_t cell) {
    const std::size_t row = cell / cols;
    const std::size_t col = cell % cols;
    ModulationWaveform w = base;
    (sweep_omega ? w.omega : w.delta) = axes.y[row];
    try {
      const SteadyState ss = steady_state(model, q.with_detuning(axes.nu[col]), w);
      grid.values[cell] =
          five ? angular_to_hz(dispersive_shift(q.omega0, *readout, ss.populations) - background)
               : ss.populations[1];
    } catch (const Error&) {
      grid.values[cell] = std::numeric_limits<double>::quiet_NaN();
    }
  });
  grid.meta["nan_cells"] = grid.nan_count();
  return grid;
}

}  // namespace latchsim
