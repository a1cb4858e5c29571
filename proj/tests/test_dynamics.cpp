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

#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "latchsim/dynamics.hpp"
#include "latchsim/latch_model.hpp"
#include "latchsim/rwa.hpp"
#include "test_util.hpp"

namespace latchsim {
namespace {

using testing::mhz;
using testing::uniform;
using cplx = std::complex<double>;

CMatrix anticomm(const CMatrix& a, const CMatrix& b) { return a * b + b * a; }

struct Jump {
  double rate;
  CMatrix c;
  CMatrix cdc;
};

std::vector<Jump> jumps(const MultilevelModel& m) {
  const int n = m.n_levels;
  std::vector<Jump> out;
  auto add = [&](double rate, const CMatrix& c) {
    if (rate > 0.0) out.push_back({rate, c, c.adjoint() * c});
  };
  for (int i = 1; i < n; ++i) {
    CMatrix lower = CMatrix::Zero(n, n);
    lower(i - 1, i) = 1.0;
    add(m.down_rates[i - 1], lower);
    add(m.up_rates[i - 1], lower.adjoint());
  }
  CMatrix number = CMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) number(i, i) = i;
  add(2.0 * m.gamma_phi, number);
  return out;
}

// Right-hand side of the master equation written directly on matrices.
CMatrix rhs(const std::vector<Jump>& js, const CMatrix& h, const CMatrix& rho) {
  CMatrix out = cplx(0.0, -1.0) * (h * rho - rho * h);
  for (const Jump& j : js) out += j.rate * (j.c * rho * j.c.adjoint() - 0.5 * anticomm(j.cdc, rho));
  return out;
}

CMatrix rhs(const MultilevelModel& m, const CMatrix& h, const CMatrix& rho) { return rhs(jumps(m), h, rho); }

// Classical RK4 over [t0, t1] in `steps` steps for a smooth waveform.
CMatrix rk4(const MultilevelModel& m, const QubitParams& q, const ModulationWaveform& w, CMatrix rho, double t0,
            double t1, int steps) {
  const double h = (t1 - t0) / steps;
  const std::vector<Jump> js = jumps(m);
  auto at = [&](double t, const CMatrix& r) { return rhs(js, hamiltonian_at(m, q, w, t), r); };
  for (int s = 0; s < steps; ++s) {
    const double t = t0 + s * h;
    const CMatrix k1 = at(t, rho);
    const CMatrix k2 = at(t + 0.5 * h, rho + 0.5 * h * k1);
    const CMatrix k3 = at(t + 0.5 * h, rho + 0.5 * h * k2);
    const CMatrix k4 = at(t + h, rho + h * k3);
    rho += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return rho;
}

// Generator assembled from the direct matrix form, one matrix unit at a time.
CMatrix direct_generator(const std::vector<Jump>& js, const CMatrix& h) {
  const Eigen::Index n = h.rows();
  CMatrix l(n * n, n * n);
  for (Eigen::Index b = 0; b < n; ++b) {
    for (Eigen::Index a = 0; a < n; ++a) {
      CMatrix unit = CMatrix::Zero(n, n);
      unit(a, b) = 1.0;
      const CMatrix col = rhs(js, h, unit);
      l.col(a + n * b) = Eigen::Map<const CVector>(col.data(), n * n);
    }
  }
  return l;
}

// One-period map from fine RK4 stepping. Square waves with zero phase switch
// at T/4 and 3T/4; each constant piece is stepped with the RK4 amplification
// matrix, which is exact RK4 for a linear constant-coefficient system.
CMatrix reference_map(const MultilevelModel& m, const QubitParams& q, const ModulationWaveform& w, int steps) {
  const int n = m.n_levels;
  const double period = kTwoPi / w.omega;
  if (w.kind == WaveformKind::Square) {
    const std::vector<Jump> js = jumps(m);
    const double cuts[] = {0.0, 0.25 * period, 0.75 * period, period};
    CMatrix map = CMatrix::Identity(n * n, n * n);
    for (int c = 0; c < 3; ++c) {
      const int k = static_cast<int>(std::lround(steps * (cuts[c + 1] - cuts[c]) / period));
      const double h = (cuts[c + 1] - cuts[c]) / k;
      const CMatrix hl = h * direct_generator(js, hamiltonian_at(m, q, w, 0.5 * (cuts[c] + cuts[c + 1])));
      const CMatrix id = CMatrix::Identity(n * n, n * n);
      const CMatrix step = id + hl * (id + hl * (id + hl * (id + hl / 4.0) / 3.0) / 2.0);
      for (int s = 0; s < k; ++s) map = (step * map).eval();
    }
    return map;
  }
  CMatrix map(n * n, n * n);
  for (int b = 0; b < n; ++b) {
    for (int a = 0; a < n; ++a) {
      CMatrix rho = CMatrix::Zero(n, n);
      rho(a, b) = 1.0;
      rho = rk4(m, q, w, rho, 0.0, period, steps);
      map.col(a + n * b) = Eigen::Map<const CVector>(rho.data(), n * n);
    }
  }
  return map;
}

QubitParams random_qubit() {
  QubitParams q = testing::reference_qubit();
  q.g = mhz(uniform(2, 40));
  q.gamma1 = mhz(uniform(0.2, 3));
  q.gamma_phi = mhz(uniform(0, 3));
  q.t_bath = uniform(0, 0.1);
  return q.with_detuning(mhz(uniform(-200, 200)));
}

CMatrix random_density(int n) {
  CMatrix a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = cplx(uniform(-1, 1), uniform(-1, 1));
  }
  CMatrix rho = a * a.adjoint();
  return rho / rho.trace();
}

CMatrix apply_map(const CMatrix& map, const CMatrix& rho) {
  const Eigen::Index n = rho.rows();
  const CVector v = map * Eigen::Map<const CVector>(rho.data(), n * n);
  return Eigen::Map<const CMatrix>(v.data(), n, n);
}

TEST(Hamiltonian, TwoLevelForms) {
  QubitParams q = testing::reference_qubit();
  const MultilevelModel m = two_level_model(q);
  CMatrix h = hamiltonian(m, q.omega, 0.0);
  EXPECT_NEAR(std::abs(h(0, 0)), 0.0, 1e-6);
  EXPECT_NEAR(std::abs(h(1, 1)), 0.0, 1e-6);
  EXPECT_EQ(h(0, 1), cplx(0.5 * q.g, 0.0));
  EXPECT_EQ(h(1, 0), cplx(0.5 * q.g, 0.0));
  // right latch of a square wave: splitting nu + delta
  q = q.with_detuning(mhz(-30));
  const ModulationWaveform w = testing::square(mhz(100), mhz(50));
  h = hamiltonian_at(m, q, w, 0.1 * w.period());
  EXPECT_NEAR((h(1, 1) - h(0, 0)).real(), mhz(70), 1e-3);
  EXPECT_NEAR(h(0, 1).real(), 0.5 * q.g, 1e-9);
  h = hamiltonian_at(m, q, w, 0.5 * w.period());
  EXPECT_NEAR((h(1, 1) - h(0, 0)).real(), mhz(-130), 1e-3);
}

TEST(Hamiltonian, FiveLevelLadder) {
  const QubitParams q = testing::reference_qubit();
  const double e_c = testing::ghz(0.35);
  const MultilevelModel m = transmon_ladder_model(q, e_c, 5);
  for (int i = 1; i + 1 < 5; ++i) {
    const double anh = m.level_freqs[i + 1] - 2.0 * m.level_freqs[i] + m.level_freqs[i - 1];
    EXPECT_NEAR(anh, -e_c, 1e-3);
  }
  EXPECT_NEAR(m.level_freqs[2] - 2.0 * m.level_freqs[1], -e_c, 1e-3);
  const CMatrix h = hamiltonian(m, q.omega, mhz(40));
  EXPECT_NEAR(h(2, 2).real(), m.level_freqs[2] - 2.0 * q.omega + 2.0 * mhz(40), 1e-3);
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      if (i != j && i + j != 1) {
        EXPECT_EQ(h(i, j), cplx(0.0, 0.0));
      }
    }
  }
  // rates: i gamma1 on transition i-1 <-> i when cold
  QubitParams cold = q;
  cold.t_bath = 0.0;
  const MultilevelModel mc = transmon_ladder_model(cold, e_c, 5);
  for (int i = 1; i < 5; ++i) {
    EXPECT_DOUBLE_EQ(mc.down_rates[i - 1], i * q.gamma1);
    EXPECT_EQ(mc.up_rates[i - 1], 0.0);
  }
}

TEST(Lindblad, GeneratorMatchesDirectForm) {
  for (int trial = 0; trial < 20; ++trial) {
    const QubitParams q = random_qubit();
    for (const MultilevelModel& m : {two_level_model(q), transmon_ladder_model(q, testing::ghz(0.35), 5)}) {
      const CMatrix h = hamiltonian(m, q.omega, mhz(uniform(-100, 100)));
      const CMatrix l = lindblad_generator(m, h);
      const CMatrix rho = random_density(m.n_levels);
      const CMatrix direct = rhs(m, h, rho);
      EXPECT_LT(max_abs(apply_map(l, rho) - direct), 1e-9 * max_abs(direct) + 1e-3);
    }
  }
}

TEST(Lindblad, UnitaryWhenRatesVanish) {
  QubitParams q = testing::reference_qubit().with_detuning(mhz(17));
  q.gamma1 = q.gamma_phi = q.t_bath = 0.0;
  const MultilevelModel m = two_level_model(q);
  const CMatrix h = hamiltonian(m, q.omega, mhz(30));
  const CMatrix u = expm(cplx(0.0, -1.0) * h * 3e-9);
  const CMatrix prop = expm(lindblad_generator(m, h) * 3e-9);
  const CMatrix rho = random_density(2);
  const CMatrix out = apply_map(prop, rho);
  EXPECT_LT(max_abs(out - u * rho * u.adjoint()), 1e-12);
  EXPECT_NEAR(out.trace().real(), 1.0, 1e-12);
  EXPECT_NEAR((out * out).trace().real(), (rho * rho).trace().real(), 1e-12);
}

TEST(Lindblad, FreeDecay) {
  QubitParams q = testing::reference_qubit();
  q.g = 0.0;
  q.t_bath = 0.0;
  const MultilevelModel m = two_level_model(q);
  const CMatrix l = lindblad_generator(m, hamiltonian(m, q.omega, 0.0));
  CMatrix rho = CMatrix::Zero(2, 2);
  rho(1, 1) = 1.0;
  for (double t : {1e-8, 1e-7, 5e-7, 2e-6}) {
    EXPECT_NEAR(apply_map(expm(l * t), rho)(1, 1).real(), std::exp(-q.gamma1 * t), 1e-12) << t;
  }
}

TEST(Lindblad, NegativeRatesRejected) {
  MultilevelModel m = two_level_model(testing::reference_qubit());
  m.down_rates[0] = -1.0;
  EXPECT_THROW(lindblad_generator(m, CMatrix::Zero(2, 2)), InvalidArgument);
  m = two_level_model(testing::reference_qubit());
  EXPECT_THROW(lindblad_generator(m, CMatrix::Zero(3, 3)), InvalidArgument);
}

TEST(SteadyState, DetailedBalance) {
  QubitParams q = testing::reference_qubit();
  q.g = 0.0;
  const ModulationWaveform still = testing::square(0.0, mhz(50));
  const double nbar = thermal_occupation(q.omega0, q.t_bath);
  const SteadyState two = steady_state(two_level_model(q), q, still);
  EXPECT_NEAR(two.populations[1], nbar / (2.0 * nbar + 1.0), 1e-12);
  EXPECT_NEAR(two.rho.population(1), nbar / (2.0 * nbar + 1.0), 1e-12);

  const double e_c = testing::ghz(0.35);
  q.t_bath = 0.2;
  const SteadyState five = steady_state(transmon_ladder_model(q, e_c, 5), q, still);
  const std::vector<double> w = ladder_frequencies(q.omega0, e_c, 5);
  for (int i = 1; i < 5; ++i) {
    const double boltzmann = std::exp(-kHbarOverKb * (w[i] - w[i - 1]) / q.t_bath);
    EXPECT_NEAR(five.populations[i] / five.populations[i - 1], boltzmann, 1e-9) << i;
  }
}

TEST(SteadyState, ColdUndrivenQubitInGround) {
  QubitParams q = testing::reference_qubit();
  q.g = 0.0;
  q.t_bath = 0.0;
  const SteadyState ss = steady_state(two_level_model(q), q, testing::square(mhz(100), mhz(50)));
  EXPECT_NEAR(ss.populations[0], 1.0, 1e-12);
  EXPECT_NEAR(ss.populations[1], 0.0, 1e-12);
}

TEST(SteadyState, UnmodulatedLineIsLorentzian) {
  QubitParams q = testing::reference_qubit();
  q.t_bath = 0.0;
  const MultilevelModel m = two_level_model(q);
  const ModulationWaveform still = testing::square(0.0, mhz(50));
  const double g2 = q.gamma2();
  const double sat = g2 / q.gamma1 * q.g * q.g;
  for (double nu_mhz : {-80.0, -10.0, -2.0, 0.0, 3.0, 25.0, 150.0}) {
    const double nu = mhz(nu_mhz);
    const double expected = 0.5 * sat / (g2 * g2 + nu * nu + sat);
    EXPECT_NEAR(steady_state(m, q.with_detuning(nu), still).populations[1], expected, 1e-10) << nu_mhz;
  }
}

TEST(PeriodMap, SquareMatchesFineIntegration) {
  for (int trial = 0; trial < 5; ++trial) {
    const QubitParams q = random_qubit();
    const ModulationWaveform w = testing::square(mhz(uniform(20, 200)), mhz(uniform(30, 120)));
    const MultilevelModel m = two_level_model(q);
    const PeriodMap pm = period_map(m, q, w);
    EXPECT_EQ(pm.steps, 0);
    EXPECT_LT(max_abs(pm.map - reference_map(m, q, w, 10000)), 1e-8);
  }
  const QubitParams q = random_qubit();
  const ModulationWaveform w = testing::square(mhz(100), mhz(80));
  const MultilevelModel m = transmon_ladder_model(q, testing::ghz(0.35), 5);
  EXPECT_LT(max_abs(period_map(m, q, w).map - reference_map(m, q, w, 40000)), 1e-8);
}

TEST(PeriodMap, SmoothWaveformsMatchFineIntegration) {
  for (auto kind : {WaveformKind::Sine, WaveformKind::RampedSquare}) {
    const QubitParams q = random_qubit();
    ModulationWaveform w = testing::square(mhz(100), mhz(60));
    w.kind = kind;
    w.ramp = 1.5e-9;
    w.phase = 0.4;
    const MultilevelModel m = two_level_model(q);
    const PeriodMap pm = period_map(m, q, w);
    EXPECT_GT(pm.steps, 0);
    EXPECT_LT(max_abs(pm.map - reference_map(m, q, w, 40000)), 5e-8) << to_string(kind);
  }
}

TEST(PeriodMap, ZeroModulationIsUnitaryConjugation) {
  QubitParams q = testing::reference_qubit().with_detuning(mhz(12));
  q.gamma1 = q.gamma_phi = q.t_bath = 0.0;
  const MultilevelModel m = two_level_model(q);
  const ModulationWaveform w = testing::square(0.0, mhz(50));
  const CMatrix u = expm(cplx(0.0, -1.0) * hamiltonian(m, q.omega, 0.0) * w.period());
  const CMatrix map = period_map(m, q, w).map;
  for (int i = 0; i < 5; ++i) {
    const CMatrix rho = random_density(2);
    EXPECT_LT(max_abs(apply_map(map, rho) - u * rho * u.adjoint()), 1e-12);
  }
}

TEST(PeriodMap, CompletelyPositiveTracePreserving) {
  const WaveformKind kinds[] = {WaveformKind::Square, WaveformKind::Sine, WaveformKind::RampedSquare};
  for (int trial = 0; trial < 6; ++trial) {
    const QubitParams q = random_qubit();
    ModulationWaveform w = testing::square(mhz(uniform(0, 200)), mhz(uniform(20, 120)));
    w.kind = kinds[trial % 3];
    w.ramp = 0.1 * w.period();
    for (const MultilevelModel& m : {two_level_model(q), transmon_ladder_model(q, testing::ghz(0.35), 5)}) {
      const CMatrix map = period_map(m, q, w).map;
      const int n = m.n_levels;
      // the adjoint map fixes the identity
      const CMatrix id = CMatrix::Identity(n, n);
      const CVector vid = Eigen::Map<const CVector>(id.data(), n * n);
      EXPECT_LT((map.adjoint() * vid - vid).cwiseAbs().maxCoeff(), 1e-10);
      for (int k = 0; k < 50; ++k) {
        const DensityMatrix out{apply_map(map, random_density(n))};
        EXPECT_LT(out.trace_defect(), 1e-10);
        EXPECT_LT(out.hermiticity_defect(), 1e-10);
        EXPECT_GE(out.min_eigenvalue(), -1e-8);
      }
    }
  }
}

TEST(PeriodMap, CoherentLimitMatchesLatchModel) {
  for (int trial = 0; trial < 20; ++trial) {
    QubitParams q = random_qubit();
    q.gamma1 = q.gamma_phi = q.t_bath = 0.0;
    const double delta = mhz(uniform(30, 200));
    ModulationWaveform w = testing::square(delta, mhz(uniform(20, 120)));
    // start of a period at the switch into the right latch
    w.phase = 1.5 * kPi;
    const CMatrix map = period_map(two_level_model(q), q, w).map;
    const double theta = std::atan2(q.g, q.nu() + delta);
    CVector lower(2), upper(2);
    lower << std::cos(0.5 * theta), -std::sin(0.5 * theta);
    upper << std::sin(0.5 * theta), std::cos(0.5 * theta);
    CMatrix rho = lower * lower.adjoint();
    const PeriodUnitary pu = period_unitary(latch_frame(q, delta, w.omega), StartLatch::RightStart);
    for (int n = 1; n <= 25; ++n) {
      rho = apply_map(map, rho);
      const double p = (upper.adjoint() * rho * upper)(0, 0).real();
      EXPECT_NEAR(p, n_period_population(pu, n), 1e-9) << "trial " << trial << " n " << n;
    }
  }
}

TEST(SteadyState, PhaseInvariance) {
  const QubitParams q = testing::reference_qubit().with_detuning(mhz(30));
  for (auto kind : {WaveformKind::Square, WaveformKind::Sine, WaveformKind::RampedSquare}) {
    ModulationWaveform w = testing::square(mhz(100), mhz(40));
    w.kind = kind;
    w.ramp = 2e-9;
    std::vector<MultilevelModel> models{two_level_model(q)};
    if (kind == WaveformKind::Square) models.push_back(transmon_ladder_model(q, testing::ghz(0.35), 5));
    for (const MultilevelModel& m : models) {
      w.phase = 0.0;
      const std::vector<double> ref = steady_state(m, q, w).populations;
      for (double phase : {0.7, 2.0, 4.5}) {
        w.phase = phase;
        const std::vector<double> got = steady_state(m, q, w).populations;
        for (std::size_t i = 0; i < ref.size(); ++i) EXPECT_NEAR(got[i], ref[i], 1e-8) << to_string(kind);
      }
    }
  }
}

TEST(SteadyState, StrongAnharmonicityReducesToTwoLevels) {
  QubitParams q = testing::reference_qubit();
  q.t_bath = 0.01;
  const ModulationWaveform w = testing::square(mhz(100), mhz(50));
  for (double nu_mhz : {-100.0, -40.0, 0.0, 65.0}) {
    const QubitParams qn = q.with_detuning(mhz(nu_mhz));
    const double two = steady_state(two_level_model(qn), qn, w).populations[1];
    const double five = steady_state(transmon_ladder_model(qn, testing::ghz(1.0), 5), qn, w).populations[1];
    EXPECT_NEAR(five, two, 1e-3) << nu_mhz;
  }
}

TEST(SteadyState, SumResonancesAreLocalMaxima) {
  // points outside the latching range by more than g, where the family applies
  const QubitParams q = testing::reference_qubit();
  const double delta = mhz(100);
  const MultilevelModel m = two_level_model(q);
  int checked = 0;
  for (int k = 2; k <= 4; ++k) {
    for (double om : {40.0, 60.0, 80.0, 110.0}) {
      const std::vector<double> omega{mhz(om)};
      for (const ResonancePoint& p : resonance_curves(q, delta, ResonanceFamily::SumRes, k, omega)) {
        if (std::abs(p.nu) < delta + q.g) continue;
        const ModulationWaveform w = testing::square(delta, p.omega_mod);
        auto pop = [&](double nu) { return steady_state(m, q.with_detuning(nu), w).populations[1]; };
        double nu = p.nu;
        double v = pop(nu);
        const double h = mhz(0.02);
        for (int it = 0; it < 1000; ++it) {
          const double up = pop(nu + h);
          const double down = pop(nu - h);
          if (up > v && up >= down) {
            nu += h;
            v = up;
          } else if (down > v) {
            nu -= h;
            v = down;
          } else {
            break;
          }
        }
        EXPECT_LT(std::abs(nu - p.nu), mhz(1.0)) << "k=" << k << " Omega=" << om;
        ++checked;
      }
    }
  }
  EXPECT_GE(checked, 15);
}

TEST(SteadyState, AgreesWithDominantSidebandTerm) {
  // at nu = -2 Omega the m = 2 Lorentzian alone carries the line
  const QubitParams q = testing::reference_qubit();
  const double omega = mhz(50);
  const double l2 = steady_state(two_level_model(q), q.with_detuning(-2 * omega), testing::square(mhz(100), omega))
                        .populations[1];
  const double d2 = sideband_amplitude(WaveformKind::Square, 2, 2.0);
  const double drive = q.g * d2;
  const double sat = q.gamma2() / q.gamma1 * drive * drive;
  const double single = 0.5 * sat / (q.gamma2() * q.gamma2() + sat);
  EXPECT_NEAR(single, 0.482, 5e-4);
  EXPECT_LT(std::abs(l2 - single) / single, 0.10);
}

TEST(SteadyState, AgreesWithSidebandSumAtSecondSideband) {
  const QubitParams q = testing::reference_qubit();
  const double omega = mhz(50);
  const double l2 = steady_state(two_level_model(q), q.with_detuning(-2 * omega), testing::square(mhz(100), omega))
                        .populations[1];
  const double rwa = rwa_population(q, sideband_set(WaveformKind::Square, 2.0), omega, -2 * omega);
  EXPECT_LT(std::abs(l2 - rwa) / l2, 0.10) << "lindblad " << l2 << " rwa " << rwa;
}

TEST(SteadyState, RequiresRelaxation) {
  QubitParams q = testing::reference_qubit();
  q.gamma1 = 0.0;
  q.gamma_phi = 0.0;
  q.t_bath = 0.0;
  EXPECT_THROW(steady_state(two_level_model(q), q, testing::square(mhz(100), mhz(50))), Error);
}

TEST(DispersiveShift, GroundStateValue) {
  TransmonParams tp = testing::reference_transmon();
  const double omega0 = testing::ghz(2.62);
  const std::vector<double> ground{1.0, 0.0, 0.0, 0.0, 0.0};
  const double chi0 = dispersive_shift(omega0, tp, ground);
  EXPECT_NEAR(angular_to_hz(chi0) / 1e6, 5.447, 5e-4);
  EXPECT_NEAR(chi0, -tp.g0 * tp.g0 / (omega0 - tp.omega_r), 1e-6);
}

TEST(DispersiveShift, LinearInPopulations) {
  const TransmonParams tp = testing::reference_transmon();
  const double omega0 = testing::ghz(2.62);
  const std::vector<double> chi = chi_shifts(omega0, tp.e_c, tp.g0, tp.omega_r, 5);
  ASSERT_EQ(chi.size(), 5u);
  std::vector<double> p{0.5, 0.3, 0.1, 0.07, 0.03};
  const double base = dispersive_shift(omega0, tp, p);
  double expected = 0.0;
  for (int i = 0; i < 5; ++i) expected += p[i] * chi[i];
  EXPECT_NEAR(base, expected, 1e-6);
  std::swap(p[0], p[2]);
  EXPECT_NEAR(dispersive_shift(omega0, tp, p) - base, 0.4 * (chi[2] - chi[0]), 1e-6);
  EXPECT_THROW(dispersive_shift(omega0, tp, std::vector<double>{0.5, 0.4, 0.0, 0.0, 0.0}), InvalidArgument);
  EXPECT_THROW(chi_shifts(tp.omega_r, tp.e_c, tp.g0, tp.omega_r, 5), InvalidArgument);
}

SweepAxes row_axes(std::vector<double> nu, double y) {
  SweepAxes axes;
  axes.nu = std::move(nu);
  axes.y = {y};
  return axes;
}

TEST(DissipativeSpectrum, UndrivenBackgroundIsZero) {
  QubitParams q = testing::reference_qubit();
  q.g = 0.0;
  const SpectrumGrid grid = dissipative_spectrum(SolverLayer::Lindblad5, q, testing::square(mhz(100), mhz(50)),
                                                 row_axes({mhz(-50), mhz(0), mhz(80)}, mhz(50)),
                                                 testing::reference_transmon());
  EXPECT_EQ(grid.observable, Observable::DispersiveShiftHz);
  for (double v : grid.values) EXPECT_NEAR(v, 0.0, 1e-6);
  EXPECT_TRUE(grid.meta.contains("background_shift_hz"));
  EXPECT_THROW(dissipative_spectrum(SolverLayer::Lindblad5, q, testing::square(mhz(100), mhz(50)),
                                    row_axes({0.0}, mhz(50)), std::nullopt),
               InvalidArgument);
  EXPECT_THROW(dissipative_spectrum(SolverLayer::RWA, q, testing::square(mhz(100), mhz(50)),
                                    row_axes({0.0}, mhz(50)), std::nullopt),
               InvalidArgument);
}

TEST(DissipativeSpectrum, FastModulationLeavesOneCentralLine) {
  const QubitParams q = testing::reference_qubit();
  const std::vector<double> nu = linspace(mhz(-300), mhz(300), 121);
  const SpectrumGrid grid = dissipative_spectrum(SolverLayer::Lindblad2, q, testing::square(mhz(100), mhz(2000)),
                                                 row_axes(nu, mhz(2000)), std::nullopt, 4);
  std::size_t peak = 0;
  for (std::size_t c = 0; c < nu.size(); ++c) {
    if (grid.values[c] > grid.values[peak]) peak = c;
  }
  EXPECT_EQ(peak, 60u);
  for (std::size_t c = 1; c + 1 < nu.size(); ++c) {
    if (c == 60) continue;
    const bool local_max = grid.values[c] > grid.values[c - 1] && grid.values[c] > grid.values[c + 1];
    EXPECT_FALSE(local_max && grid.values[c] > 0.01 * grid.values[peak]) << "side peak at column " << c;
  }
}

TEST(DissipativeSpectrum, DeltaZeroColumnIsLorentzian) {
  QubitParams q = testing::reference_qubit();
  q.t_bath = 0.0;
  SweepAxes axes;
  axes.nu = linspace(mhz(-60), mhz(60), 13);
  axes.y = {0.0, mhz(50)};
  axes.y_kind = YAxis::ModulationAmplitude;
  const SpectrumGrid grid =
      dissipative_spectrum(SolverLayer::Lindblad2, q, testing::square(0.0, mhz(50)), axes, std::nullopt, 2);
  const double g2 = q.gamma2();
  const double sat = g2 / q.gamma1 * q.g * q.g;
  for (std::size_t c = 0; c < axes.nu.size(); ++c) {
    const double nu = axes.nu[c];
    EXPECT_NEAR(grid.at(0, c), 0.5 * sat / (g2 * g2 + nu * nu + sat), 1e-10);
  }
  EXPECT_EQ(grid.meta["nan_cells"], 0);
}

TEST(DissipativeSpectrum, ThreadCountDoesNotChangeValues) {
  const QubitParams q = testing::reference_qubit();
  SweepAxes axes;
  axes.nu = linspace(mhz(-200), mhz(200), 9);
  axes.y = linspace(mhz(20), mhz(100), 5);
  const ModulationWaveform w = testing::square(mhz(100), mhz(50));
  const SpectrumGrid a = dissipative_spectrum(SolverLayer::Lindblad2, q, w, axes, std::nullopt, 1);
  const SpectrumGrid b = dissipative_spectrum(SolverLayer::Lindblad2, q, w, axes, std::nullopt, 3);
  EXPECT_EQ(a.values, b.values);
  EXPECT_NO_THROW(a.validate());
}

}  // namespace
}  // namespace latchsim
