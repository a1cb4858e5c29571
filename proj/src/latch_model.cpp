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

#include "latchsim/latch_model.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "latchsim/common.hpp"
#include "latchsim/parallel.hpp"
#include "latchsim/simd/kernels.hpp"

namespace latchsim {
namespace {

using cplx = std::complex<double>;

constexpr double kDegenerateSinPhi = 1e-9;
constexpr double kRootTolerance = 1e-6;  // relative to Omega

cplx expi(double x) { return {std::cos(x), std::sin(x)}; }

// Root of a monotone function `fn` on [lo, hi] (fn(lo) and fn(hi) bracket 0).
double bisect(const std::function<double(double)>& fn, double lo, double hi, double tol) {
  double f_lo = fn(lo);
  for (int it = 0; it < 400 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = fn(mid);
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

void check_index(ResonanceFamily family, int index) {
  bool ok = true;
  switch (family) {
    case ResonanceFamily::DiffRes:
      ok = index != 0;
      break;
    case ResonanceFamily::SumRes:
    case ResonanceFamily::AntiRes:
      ok = index >= 1;
      break;
    case ResonanceFamily::SinglePeriodRes:
      ok = index >= 0;
      break;
  }
  if (!ok) {
    throw InvalidArgument("resonance_curves: index " + std::to_string(index) + " not valid for family " +
                          std::string(to_string(family)));
  }
}

}  // namespace

std::pair<double, double> switch_probability(double nu, double delta, double g) {
  if (g < 0.0) throw InvalidArgument("switch_probability: g must be >= 0");
  if (g == 0.0 && std::abs(nu) <= delta) {
    throw DegenerateCrossing("avoided crossing closed (g = 0) inside the latching range |nu| <= delta");
  }
  const double a = nu + delta;
  const double b = nu - delta;
  const double eps_r = std::hypot(a, g);
  const double eps_l = std::hypot(b, g);
  const double inv = 1.0 / (eps_r * eps_l);
  // cos and sin of (theta_l - theta_r); the sine has no cancellation
  const double c = (a * b + g * g) * inv;
  const double s = 2.0 * g * delta * inv;
  if (c >= 0.0) {
    const double p = s * s / (2.0 * (1.0 + c));
    return {p, 1.0 - p};
  }
  const double q = s * s / (2.0 * (1.0 - c));
  return {1.0 - q, q};
}

LatchFrame latch_frame(const QubitParams& q, double delta, double omega_mod) {
  if (!(omega_mod > 0.0)) throw InvalidArgument("latch_frame: modulation frequency must be > 0");
  if (!(delta >= 0.0)) throw InvalidArgument("latch_frame: delta must be >= 0");
  const double nu = q.nu();
  const auto [p, stay] = switch_probability(nu, delta, q.g);
  LatchFrame lf;
  lf.theta_r = std::atan2(q.g, nu + delta);
  lf.theta_l = std::atan2(q.g, nu - delta);
  lf.eps_r = std::hypot(nu + delta, q.g);
  lf.eps_l = std::hypot(nu - delta, q.g);
  lf.phi_r = 0.5 * kPi * lf.eps_r / omega_mod;
  lf.phi_l = 0.5 * kPi * lf.eps_l / omega_mod;
  lf.p_s = p;
  lf.p_stay = stay;
  return lf;
}

PeriodUnitary period_unitary(const LatchFrame& lf, StartLatch start) {
  const double p = lf.p_s;
  const double q = lf.p_stay;
  const double mix = std::sqrt(p * q);
  PeriodUnitary pu;
  switch (start) {
    case StartLatch::RightStart:
      pu.alpha = q * expi(-(lf.phi_r + lf.phi_l)) + p * expi(-(lf.phi_r - lf.phi_l));
      pu.gamma = cplx(0.0, -2.0 * mix * std::sin(lf.phi_l));
      break;
    case StartLatch::LeftStart:
      // latches exchanged; the basis change flips the sign of sqrt(p_s)
      pu.alpha = q * expi(-(lf.phi_r + lf.phi_l)) + p * expi(-(lf.phi_l - lf.phi_r));
      pu.gamma = cplx(0.0, 2.0 * mix * std::sin(lf.phi_r));
      break;
    case StartLatch::PhaseAveraged:
      throw InvalidArgument("period_unitary: PhaseAveraged has no single propagator");
  }
  const double sin_phi = std::sqrt(std::norm(pu.gamma) + pu.alpha.imag() * pu.alpha.imag());
  pu.phi = std::atan2(sin_phi, pu.alpha.real());
  return pu;
}

Eigen::Matrix2cd period_matrix(const PeriodUnitary& pu) {
  Eigen::Matrix2cd u;
  u << pu.alpha, -std::conj(pu.gamma), pu.gamma, std::conj(pu.alpha);
  return u;
}

double single_period_population(const LatchFrame& lf) {
  const double s = std::sin(lf.phi_l);
  return 4.0 * lf.p_s * lf.p_stay * s * s;
}

double n_period_population(const PeriodUnitary& pu, int n) {
  if (n < 0) throw InvalidArgument("n_period_population: n must be >= 0");
  if (n == 0) return 0.0;
  const double gam2 = std::norm(pu.gamma);
  const double sin2_phi = gam2 + pu.alpha.imag() * pu.alpha.imag();
  if (std::sqrt(sin2_phi) < kDegenerateSinPhi) return gam2 * static_cast<double>(n) * n;
  const double s = std::sin(n * pu.phi);
  return gam2 * s * s / sin2_phi;
}

double averaged_population(const PeriodUnitary& pu) {
  const double gam2 = std::norm(pu.gamma);
  if (gam2 == 0.0) return 0.0;
  const double im = pu.alpha.imag();
  return 0.5 * gam2 / (gam2 + im * im);
}

double averaged_population(const LatchFrame& lf, StartLatch start) {
  switch (start) {
    case StartLatch::RightStart:
    case StartLatch::LeftStart:
      return averaged_population(period_unitary(lf, start));
    case StartLatch::PhaseAveraged:
      return 0.5 * (averaged_population(period_unitary(lf, StartLatch::RightStart)) +
                    averaged_population(period_unitary(lf, StartLatch::LeftStart)));
  }
  return 0.0;
}

std::string_view to_string(ResonanceFamily f) {
  switch (f) {
    case ResonanceFamily::DiffRes:
      return "diff";
    case ResonanceFamily::SumRes:
      return "sum";
    case ResonanceFamily::SinglePeriodRes:
      return "single-period";
    case ResonanceFamily::AntiRes:
      return "anti";
  }
  return "unknown";
}

ResonanceFamily parse_resonance_family(std::string_view s) {
  for (auto f : {ResonanceFamily::DiffRes, ResonanceFamily::SumRes, ResonanceFamily::SinglePeriodRes,
                 ResonanceFamily::AntiRes}) {
    if (s == to_string(f)) return f;
  }
  throw InvalidArgument("unknown resonance family '" + std::string(s) +
                        "' (expected diff, sum, single-period or anti)");
}

std::vector<ResonancePoint> resonance_curves(const QubitParams& q, double delta, ResonanceFamily family,
                                             int index, std::span<const double> omega_values) {
  check_index(family, index);
  if (q.g < 0.0 || delta < 0.0) throw InvalidArgument("resonance_curves: g and delta must be >= 0");
  const double g = q.g;
  auto eps_l = [&](double nu) { return std::hypot(nu - delta, g); };
  auto eps_r = [&](double nu) { return std::hypot(nu + delta, g); };

  std::vector<ResonancePoint> out;
  for (double om : omega_values) {
    if (!(om > 0.0)) throw InvalidArgument("resonance_curves: modulation frequencies must be > 0");
    const double tol = kRootTolerance * om;
    switch (family) {
      case ResonanceFamily::DiffRes: {
        // eps_l - eps_r = -4 nu delta / (eps_l + eps_r): odd, decreasing, |.| < 2 delta
        const double target = 2.0 * index * om;
        if (delta == 0.0 || std::abs(target) >= 2.0 * delta) break;
        auto diff = [&](double nu) { return -4.0 * nu * delta / (eps_l(nu) + eps_r(nu)) - target; };
        // the root has the opposite sign of the target; grow the bracket outward from 0
        const double sign = target > 0.0 ? -1.0 : 1.0;
        double reach = std::max(delta, g);
        int grow = 0;
        while ((diff(sign * reach) < 0.0) == (diff(0.0) < 0.0) && grow++ < 2000) reach *= 2.0;
        if ((diff(sign * reach) < 0.0) == (diff(0.0) < 0.0)) break;
        out.push_back({om, bisect(diff, std::min(0.0, sign * reach), std::max(0.0, sign * reach), tol)});
        break;
      }
      case ResonanceFamily::SumRes: {
        const double target = 2.0 * index * om;
        auto sum = [&](double nu) { return eps_l(nu) + eps_r(nu) - target; };
        if (sum(0.0) > 0.0) break;
        if (sum(0.0) == 0.0) {
          out.push_back({om, 0.0});
          break;
        }
        double hi = std::max(0.5 * target, tol);
        while (sum(hi) < 0.0) hi *= 2.0;
        const double nu = bisect(sum, 0.0, hi, tol);
        out.push_back({om, -nu});
        out.push_back({om, nu});
        break;
      }
      case ResonanceFamily::SinglePeriodRes:
      case ResonanceFamily::AntiRes: {
        const double target = family == ResonanceFamily::AntiRes ? 2.0 * index * om : (2.0 * index + 1.0) * om;
        if (target < g) break;
        const double half_width = std::sqrt((target - g) * (target + g));
        if (half_width == 0.0) {
          out.push_back({om, delta});
        } else {
          out.push_back({om, delta - half_width});
          out.push_back({om, delta + half_width});
        }
        break;
      }
    }
  }
  return out;
}

SpectrumGrid latch_spectrum(const QubitParams& q, const ModulationWaveform& base, const SweepAxes& axes,
                            unsigned threads) {
  if (base.kind != WaveformKind::Square) throw InvalidArgument("latch_spectrum: needs a square waveform");
  if (axes.nu.empty() || axes.y.empty()) throw InvalidArgument("latch_spectrum: empty grid");
  SpectrumGrid grid = SpectrumGrid::for_axes(axes, Observable::Population, SolverLayer::AdiabaticImpulse);
  const std::size_t cols = axes.nu.size();
  parallel_for(axes.y.size(), threads, [&](std::size_t row) {
    const bool sweep_omega = axes.y_kind == YAxis::ModulationFrequency;
    const double omega = sweep_omega ? axes.y[row] : base.omega;
    const double delta = sweep_omega ? base.delta : axes.y[row];
    std::span<double> out(grid.values.data() + row * cols, cols);
    if (q.g > 0.0) {
      simd::latch_population({q.g, delta, omega}, axes.nu, out);
      return;
    }
    for (std::size_t c = 0; c < cols; ++c) {
      try {
        out[c] = averaged_population(latch_frame(q.with_detuning(axes.nu[c]), delta, omega),
                                     StartLatch::PhaseAveraged);
      } catch (const DegenerateCrossing&) {
        out[c] = std::numeric_limits<double>::quiet_NaN();
      }
    }
  });
  grid.meta["nan_cells"] = grid.nan_count();
  return grid;
}

}  // namespace latchsim
