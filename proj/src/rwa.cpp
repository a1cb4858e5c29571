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

#include "latchsim/rwa.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <string>

#include "latchsim/common.hpp"
#include "latchsim/parallel.hpp"
#include "latchsim/simd/kernels.hpp"

namespace latchsim {
namespace {

using cplx = std::complex<double>;

void check_kind(WaveformKind kind, const char* who) {
  if (kind == WaveformKind::RampedSquare) {
    throw InvalidArgument(std::string(who) + ": ramped-square modulation has no closed-form sidebands");
  }
}

void check_ratio(double ratio, const char* who) {
  if (!(ratio >= 0.0) || !std::isfinite(ratio)) {
    throw InvalidArgument(std::string(who) + ": ratio must be finite and >= 0");
  }
}

// Delta_k for k >= 0 written as r/(k+r) * sinc(pi (k-r)/2). This is finite at
// k = r, where it reduces to 1/2, and at k = 0 it is sinc(pi r / 2).
double square_amplitude(int k, double r) {
  if (r == 0.0) return k == 0 ? 1.0 : 0.0;
  const double x = 0.5 * kPi * (static_cast<double>(k) - r);
  const double x2 = x * x;
  const double sinc = std::abs(x) < 1e-4 ? 1.0 - x2 / 6.0 + x2 * x2 / 120.0 : std::sin(x) / x;
  return r / (k + r) * sinc;
}

std::vector<double> nonnegative_amplitudes(WaveformKind kind, double ratio, int m_max) {
  if (kind == WaveformKind::Sine) return bessel_j_sequence(m_max, ratio);
  std::vector<double> out(static_cast<std::size_t>(m_max) + 1);
  for (int k = 0; k <= m_max; ++k) out[k] = square_amplitude(k, ratio);
  return out;
}

SidebandSet assemble(WaveformKind kind, double ratio, const std::vector<double>& pos, int m_max) {
  SidebandSet sb;
  sb.kind = kind;
  sb.ratio = ratio;
  sb.m_max = m_max;
  sb.amps.resize(2 * static_cast<std::size_t>(m_max) + 1);
  double sum = pos[0] * pos[0];
  sb.amps[m_max] = pos[0];
  for (int k = 1; k <= m_max; ++k) {
    sb.amps[m_max + k] = pos[k];
    sb.amps[m_max - k] = (k % 2 == 0) ? pos[k] : -pos[k];
    sum += 2.0 * pos[k] * pos[k];
  }
  // a rounding-level excess over 1 is reported as zero defect
  sb.parseval_defect = std::max(0.0, 1.0 - sum);
  return sb;
}

// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration.
struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};

GaussRule gauss_legendre(int n) {
  GaussRule rule{std::vector<double>(n), std::vector<double>(n)};
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    rule.x[i] = -z;
    rule.x[n - 1 - i] = z;
    rule.w[i] = rule.w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return rule;
}

}  // namespace

double sideband_amplitude(WaveformKind kind, int m, double ratio) {
  check_kind(kind, "sideband_amplitude");
  check_ratio(ratio, "sideband_amplitude");
  if (kind == WaveformKind::Sine) return bessel_j(m, ratio);
  const int k = std::abs(m);
  const double v = square_amplitude(k, ratio);
  return (m < 0 && k % 2 == 1) ? -v : v;
}

SidebandSet sideband_set(WaveformKind kind, double ratio, int m_max) {
  check_kind(kind, "sideband_set");
  check_ratio(ratio, "sideband_set");
  if (m_max < 1) throw InvalidArgument("sideband_set: m_max must be >= 1");
  return assemble(kind, ratio, nonnegative_amplitudes(kind, ratio, m_max), m_max);
}

SidebandSet sideband_set(WaveformKind kind, double ratio) {
  check_kind(kind, "sideband_set");
  check_ratio(ratio, "sideband_set");
  const std::vector<double> pos = nonnegative_amplitudes(kind, ratio, kMaxSidebandOrder);
  double sum = pos[0] * pos[0];
  int m_max = kMaxSidebandOrder;
  for (int k = 1; k <= kMaxSidebandOrder; ++k) {
    sum += 2.0 * pos[k] * pos[k];
    if (1.0 - sum < kParsevalTarget) {
      m_max = k;
      break;
    }
  }
  return assemble(kind, ratio, pos, m_max);
}

SidebandSet fft_sidebands(const ModulationWaveform& w, int m_max) {
  w.validate();
  check_kind(w.kind, "fft_sidebands");
  if (w.phase != 0.0) throw InvalidArgument("fft_sidebands: waveform phase must be 0");
  if (m_max < 1) throw InvalidArgument("fft_sidebands: m_max must be >= 1");
  const double ratio = w.delta / w.omega;
  const int count = 2 * m_max + 1;
  std::vector<cplx> acc(count, cplx(0.0, 0.0));

  // quadrature in theta = Omega t over one period, weights normalized to 1/(2 pi)
  auto accumulate = [&](double theta, double weight) {
    const cplx a = std::polar(1.0, phase_integral(w, 0.0, theta / w.omega));
    for (int m = -m_max; m <= m_max; ++m) acc[m + m_max] += weight * a * std::polar(1.0, -m * theta);
  };

  if (w.kind == WaveformKind::Square) {
    // A is smooth between the switching instants theta = pi/2 and 3 pi/2
    const std::array<double, 4> edges{0.0, 0.5 * kPi, 1.5 * kPi, kTwoPi};
    const GaussRule rule = gauss_legendre(16);
    const int pieces = 8 + static_cast<int>(std::ceil((ratio + m_max) / 2.0));
    for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
      const double h = (edges[e + 1] - edges[e]) / pieces;
      for (int p = 0; p < pieces; ++p) {
        const double mid = edges[e] + (p + 0.5) * h;
        for (std::size_t i = 0; i < rule.x.size(); ++i) {
          accumulate(mid + 0.5 * h * rule.x[i], 0.5 * h * rule.w[i] / kTwoPi);
        }
      }
    }
  } else {
    // periodic analytic integrand: the trapezoid rule converges geometrically
    const int n = 2 * (m_max + static_cast<int>(std::ceil(ratio)) + 40);
    for (int i = 0; i < n; ++i) accumulate(kTwoPi * i / n, 1.0 / n);
  }

  SidebandSet sb;
  sb.kind = w.kind;
  sb.ratio = ratio;
  sb.m_max = m_max;
  sb.amps.resize(count);
  double sum = 0.0;
  for (int i = 0; i < count; ++i) {
    sb.amps[i] = acc[i].real();
    sum += acc[i].real() * acc[i].real();
  }
  sb.parseval_defect = std::max(0.0, 1.0 - sum);
  return sb;
}

namespace {

void check_rates(const QubitParams& q, const char* who) {
  if (!(q.gamma1 > 0.0)) throw InvalidArgument(std::string(who) + ": gamma1 must be > 0");
  q.validate();
}

struct TermArrays {
  std::vector<double> shift;
  std::vector<double> weight;
  std::vector<double> saturation;
};

TermArrays lorentzian_terms(const QubitParams& q, const SidebandSet& sb, double omega_mod) {
  const double g2 = q.gamma2();
  TermArrays t;
  for (int m = -sb.m_max; m <= sb.m_max; ++m) {
    const double drive = q.g * sb.at(m);
    const double sat = g2 / q.gamma1 * drive * drive;
    if (sat == 0.0) continue;
    t.shift.push_back(m * omega_mod);
    t.weight.push_back(0.5 * sat);
    t.saturation.push_back(sat);
  }
  return t;
}

}  // namespace

double rwa_population(const QubitParams& q, const SidebandSet& sb, double omega_mod, double nu) {
  check_rates(q, "rwa_population");
  const double g2 = q.gamma2();
  double sum = 0.0;
  for (int m = -sb.m_max; m <= sb.m_max; ++m) {
    const double drive = q.g * sb.at(m);
    const double sat = g2 / q.gamma1 * drive * drive;
    const double d = nu + m * omega_mod;
    sum += 0.5 * sat / (g2 * g2 + d * d + sat);
  }
  return sum;
}

void rwa_population(const QubitParams& q, const SidebandSet& sb, double omega_mod, std::span<const double> nu,
                    std::span<double> out) {
  check_rates(q, "rwa_population");
  const TermArrays t = lorentzian_terms(q, sb, omega_mod);
  const double g2 = q.gamma2();
  simd::lorentzian_sum({t.shift, t.weight, t.saturation, g2 * g2}, nu, out);
}

double rwa_linewidth(const QubitParams& q, double delta_m) {
  check_rates(q, "rwa_linewidth");
  const double g2 = q.gamma2();
  const double drive = q.g * delta_m;
  return std::sqrt(g2 * g2 + drive * drive * g2 / q.gamma1);
}

bool rwa_extrapolated(const QubitParams& q, double omega_mod) { return omega_mod < q.g; }

SpectrumGrid rwa_spectrum(const QubitParams& q, const ModulationWaveform& base, const SweepAxes& axes,
                          unsigned threads) {
  check_rates(q, "rwa_spectrum");
  check_kind(base.kind, "rwa_spectrum");
  if (axes.nu.empty() || axes.y.empty()) throw InvalidArgument("rwa_spectrum: empty grid");
  SpectrumGrid grid = SpectrumGrid::for_axes(axes, Observable::Population, SolverLayer::RWA);
  const std::size_t cols = axes.nu.size();
  const bool sweep_omega = axes.y_kind == YAxis::ModulationFrequency;
  std::vector<int> orders(axes.y.size());
  parallel_for(axes.y.size(), threads, [&](std::size_t row) {
    const double omega = sweep_omega ? axes.y[row] : base.omega;
    const double delta = sweep_omega ? base.delta : axes.y[row];
    if (!(omega > 0.0)) throw InvalidArgument("rwa_spectrum: modulation frequency must be > 0");
    const SidebandSet sb = sideband_set(base.kind, delta / omega);
    orders[row] = sb.m_max;
    rwa_population(q, sb, omega, axes.nu, std::span<double>(grid.values.data() + row * cols, cols));
  });
  nlohmann::json extrapolated = nlohmann::json::array();
  for (std::size_t row = 0; row < axes.y.size(); ++row) {
    const double omega = sweep_omega ? axes.y[row] : base.omega;
    if (rwa_extrapolated(q, omega)) extrapolated.push_back(grid.y_axis[row]);
  }
  grid.meta["extrapolated_rows"] = extrapolated;
  grid.meta["sideband_orders"] = orders;
  grid.meta["nan_cells"] = grid.nan_count();
  grid.meta["cells_above_one"] = std::count_if(grid.values.begin(), grid.values.end(), [](double v) { return v > 1.0; });
  return grid;
}

}  // namespace latchsim
