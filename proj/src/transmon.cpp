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

#include "latchsim/transmon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>
#include <gsl/gsl_multimin.h>

#include "latchsim/common.hpp"

namespace latchsim {
namespace {

constexpr double kCutoffStability = 1e-9;

double cos_flux(const TransmonParams& tp) {
  const double c = std::cos(kPi * tp.flux_dc);
  if (!(std::abs(tp.flux_dc) < 0.5) || !(c > 0.0)) {
    throw InvalidArgument("transmon: flux bias " + std::to_string(tp.flux_dc) +
                          " is outside the half-quantum range where cos(pi flux) > 0");
  }
  return c;
}

double amplitude_scale(const TransmonParams& tp, AmplitudeConvention conv) {
  const double p = phi_zpf(tp);
  if (!(p < 1.0)) throw InvalidArgument("transmon: phi_zpf >= 1, outside the transmon regime");
  const double p2 = p * p;
  const double pre = conv == AmplitudeConvention::Halved ? 0.5 : 1.0;
  return pre * tp.e_j_sum * std::sin(kPi * tp.flux_dc) * (p2 * p2 - 2.0 * p2);
}

std::vector<double> levels_at_cutoff(const TransmonParams& tp, double flux, int cutoff) {
  const int dim = 2 * cutoff + 1;
  const double ej = effective_josephson(tp, flux);
  // dense on purpose: Eigen's tridiagonal-only entry point fails to converge
  // on some of these nearly degenerate charge ladders
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const double n = static_cast<double>(i - cutoff) - tp.n_g;
    h(i, i) = 4.0 * tp.e_c * n * n;
    if (i + 1 < dim) h(i, i + 1) = h(i + 1, i) = -0.5 * ej;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error("charge_basis_levels: eigensolver failed");
  const Eigen::VectorXd& e = solver.eigenvalues();
  std::vector<double> out(static_cast<std::size_t>(tp.n_levels));
  for (int i = 0; i < tp.n_levels; ++i) out[i] = e[i] - e[0];
  return out;
}

}  // namespace

void TransmonParams::validate() const {
  if (!(e_c > 0.0)) throw InvalidArgument("transmon: e_c must be > 0");
  if (!(e_j_sum > 0.0)) throw InvalidArgument("transmon: e_j_sum must be > 0");
  if (!(asym >= 0.0 && asym < 1.0)) throw InvalidArgument("transmon: asym must lie in [0, 1)");
  if (!(n_r >= 0.0)) throw InvalidArgument("transmon: n_r must be >= 0");
  if (!(g0 >= 0.0)) throw InvalidArgument("transmon: g0 must be >= 0");
  if (n_levels < 2) throw InvalidArgument("transmon: n_levels must be >= 2");
}

double plasma_frequency(const TransmonParams& tp) {
  return std::sqrt(8.0 * tp.e_c * tp.e_j_sum * cos_flux(tp));
}

double qubit_frequency(const TransmonParams& tp) { return plasma_frequency(tp) - tp.e_c; }

double phi_zpf(const TransmonParams& tp) {
  return std::pow(2.0 * tp.e_c / (tp.e_j_sum * cos_flux(tp)), 0.25);
}

LatchingAmplitude latching_amplitude(const TransmonParams& tp, AmplitudeConvention conv) {
  const double signed_value = amplitude_scale(tp, conv) * std::sin(kPi * tp.flux_sq);
  return {std::abs(signed_value), signed_value > 0.0 ? 1 : (signed_value < 0.0 ? -1 : 0)};
}

double drive_coupling(const TransmonParams& tp) {
  if (!(tp.n_r >= 0.0)) throw InvalidArgument("drive_coupling: n_r must be >= 0");
  return 2.0 * tp.g0 * std::sqrt(tp.n_r);
}

double photon_number_for_coupling(double g, double g0) {
  if (!(g0 > 0.0) || !(g >= 0.0)) throw InvalidArgument("photon_number_for_coupling: need g0 > 0 and g >= 0");
  const double r = g / (2.0 * g0);
  return r * r;
}

double flux_for_qubit_frequency(const TransmonParams& tp, double omega0) {
  const double s = omega0 + tp.e_c;
  const double c = s * s / (8.0 * tp.e_c * tp.e_j_sum);
  if (!(c > 0.0 && c <= 1.0)) {
    throw InvalidArgument("flux_for_qubit_frequency: target frequency not reachable at these circuit values");
  }
  return std::acos(c) / kPi;
}

double flux_sq_for_amplitude(const TransmonParams& tp, double delta, AmplitudeConvention conv) {
  const double scale = std::abs(amplitude_scale(tp, conv));
  const double s = delta / scale;
  if (!(delta >= 0.0) || !(s <= std::sin(0.25 * kPi))) {
    throw InvalidArgument("flux_sq_for_amplitude: amplitude not reachable with flux_sq <= 1/4");
  }
  return std::asin(s) / kPi;
}

double effective_josephson(const TransmonParams& tp, double flux) {
  const double c = std::cos(kPi * flux);
  const double s = std::sin(kPi * flux);
  return tp.e_j_sum * std::sqrt(c * c + tp.asym * tp.asym * s * s);
}

std::vector<double> charge_basis_levels(const TransmonParams& tp, double flux, int cutoff) {
  tp.validate();
  if (cutoff < 10) throw InvalidArgument("charge_basis_levels: cutoff must be >= 10");
  const std::vector<double> coarse = levels_at_cutoff(tp, flux, cutoff);
  const std::vector<double> fine = levels_at_cutoff(tp, flux, 2 * cutoff);
  double worst = 0.0;
  for (std::size_t i = 1; i < fine.size(); ++i) {
    worst = std::max(worst, std::abs(fine[i] - coarse[i]) / std::abs(fine[i]));
  }
  if (worst > kCutoffStability) {
    throw ConvergenceError("charge_basis_levels: charge cutoff " + std::to_string(cutoff) + " too small", worst);
  }
  return fine;
}

namespace {

// simplex coordinates: E_C and E_J in GHz, asymmetry as is
constexpr double kGHz = 2.0 * kPi * 1e9;

struct FitContext {
  std::span<const FluxPoint> data;
  TransmonParams base;
  int cutoff;
};

double fit_cost(const gsl_vector* x, void* params) {
  const auto* ctx = static_cast<const FitContext*>(params);
  TransmonParams tp = ctx->base;
  tp.e_c = gsl_vector_get(x, 0) * kGHz;
  tp.e_j_sum = gsl_vector_get(x, 1) * kGHz;
  tp.asym = std::abs(gsl_vector_get(x, 2));
  tp.n_levels = 2;
  if (!(tp.e_c > 0.0) || !(tp.e_j_sum > 0.0) || tp.asym >= 1.0) return std::numeric_limits<double>::max();
  double sum = 0.0;
  try {
    for (const FluxPoint& p : ctx->data) {
      const double r = (charge_basis_levels(tp, p.flux, ctx->cutoff)[1] - p.frequency) / kGHz;
      sum += r * r;
    }
  } catch (const Error&) {
    return std::numeric_limits<double>::max();
  }
  return sum;
}

}  // namespace

TransmonFit fit_transmon(std::span<const FluxPoint> data, const TransmonParams& guess, int cutoff,
                         int max_iterations) {
  guess.validate();
  if (data.size() < 3) throw InvalidArgument("fit_transmon: need at least three flux points");
  FitContext ctx{data, guess, cutoff};

  gsl_multimin_function fn{&fit_cost, 3, &ctx};
  gsl_vector* x = gsl_vector_alloc(3);
  gsl_vector* step = gsl_vector_alloc(3);
  gsl_vector_set(x, 0, guess.e_c / kGHz);
  gsl_vector_set(x, 1, guess.e_j_sum / kGHz);
  gsl_vector_set(x, 2, guess.asym);
  gsl_vector_set(step, 0, 0.1 * guess.e_c / kGHz);
  gsl_vector_set(step, 1, 0.1 * guess.e_j_sum / kGHz);
  gsl_vector_set(step, 2, 0.05);
  gsl_multimin_fminimizer* s = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, 3);
  gsl_multimin_fminimizer_set(s, &fn, x, step);

  TransmonFit fit;
  int status = GSL_CONTINUE;
  for (fit.iterations = 0; fit.iterations < max_iterations && status == GSL_CONTINUE; ++fit.iterations) {
    if (gsl_multimin_fminimizer_iterate(s) != 0) break;
    const double scale = std::max(gsl_vector_get(s->x, 0), gsl_vector_get(s->x, 1));
    status = gsl_multimin_test_size(gsl_multimin_fminimizer_size(s), 1e-6 * scale);
  }
  fit.converged = status == GSL_SUCCESS;
  fit.e_c = gsl_vector_get(s->x, 0) * kGHz;
  fit.e_j_sum = gsl_vector_get(s->x, 1) * kGHz;
  fit.asym = std::abs(gsl_vector_get(s->x, 2));
  fit.rms_residual = std::sqrt(s->fval / static_cast<double>(data.size())) * kGHz;

  gsl_multimin_fminimizer_free(s);
  gsl_vector_free(step);
  gsl_vector_free(x);
  return fit;
}

}  // namespace latchsim
