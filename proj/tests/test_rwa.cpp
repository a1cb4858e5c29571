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

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include <gtest/gtest.h>

#include "latchsim/rwa.hpp"
#include "test_util.hpp"

namespace latchsim {
namespace {

using testing::mhz;
using testing::uniform;

// Fourier coefficient of A(t) = exp(i int_0^t f) for the ideal square wave,
// integrated exactly over the three constant pieces of one period.
std::complex<double> square_coefficient_exact(int m, double ratio) {
  const double omega = 1.0, delta = ratio, period = kTwoPi;
  const double edges[] = {0.0, 0.25 * period, 0.75 * period, period};
  const double fs[] = {delta, -delta, delta};
  std::complex<double> sum = 0.0;
  double phase = 0.0;
  for (int s = 0; s < 3; ++s) {
    const double t0 = edges[s], t1 = edges[s + 1], f = fs[s];
    const double k = f - m * omega;
    const std::complex<double> pre = std::polar(1.0, phase - f * t0);
    if (std::abs(k) < 1e-300) {
      sum += pre * (t1 - t0);
    } else {
      sum += pre * (std::polar(1.0, k * t1) - std::polar(1.0, k * t0)) / std::complex<double>(0.0, k);
    }
    phase += f * (t1 - t0);
  }
  return sum / period;
}

struct BesselRef {
  int m;
  double x;
  double value;
};

// 20-digit values from an arbitrary-precision library
const BesselRef kBessel[] = {
    {0, 1.0, 0.76519768655796655145},
    {1, 0.5, 0.24226845767487388638},
    {3, 1.7, 0.085149926948015258315},
    {5, 2.0, 0.0070396297558716854842},
    {0, 2.404825557695773, -6.1087652597367303971e-17},
    {2, 7.5, -0.23027341052579026215},
    {10, 3.0, 0.000012928351645715883778},
    {20, 15.0, 0.0073602340792234852583},
    {0, 30.0, -0.086367983581040211336},
    {7, 49.5, 0.099302362912634177573},
    {40, 50.0, -0.13817628120116143097},
    {60, 20.0, 2.2809263887335596395e-23},
    {1, 1e-06, 4.9999999999993747737e-7},
    {0, 1e-06, 0.99999999999975},
};

TEST(Bessel, FrozenReferenceValues) {
  for (const auto& r : kBessel) {
    const double got = bessel_j(r.m, r.x);
    EXPECT_NEAR(got, r.value, 1e-12 * std::max(std::abs(r.value), 1e-3)) << "J_" << r.m << "(" << r.x << ")";
  }
}

TEST(Bessel, MatchesStandardLibrary) {
  for (int i = 0; i < 2000; ++i) {
    const double x = uniform(0.0, 50.0);
    const int m = static_cast<int>(uniform(0.0, 60.0));
    const double ref = std::cyl_bessel_j(static_cast<double>(m), x);
    EXPECT_NEAR(bessel_j(m, x), ref, 1e-12) << "J_" << m << "(" << x << ")";
  }
}

TEST(Bessel, NegativeOrderAndSequence) {
  for (int m = 0; m <= 8; ++m) {
    EXPECT_EQ(bessel_j(-m, 3.7), (m % 2 ? -1.0 : 1.0) * bessel_j(m, 3.7));
  }
  const auto seq = bessel_j_sequence(30, 12.5);
  ASSERT_EQ(seq.size(), 31u);
  for (int m = 0; m <= 30; ++m) EXPECT_NEAR(seq[m], bessel_j(m, 12.5), 1e-14);
  EXPECT_EQ(bessel_j(0, 0.0), 1.0);
  EXPECT_EQ(bessel_j(3, 0.0), 0.0);
}

TEST(Sidebands, SquareMatchesExactSegmentIntegral) {
  for (int i = 0; i < 100; ++i) {
    const double ratio = uniform(0.0, 20.0);
    for (int m = -25; m <= 25; ++m) {
      const std::complex<double> ref = square_coefficient_exact(m, ratio);
      EXPECT_NEAR(ref.imag(), 0.0, 1e-12);
      EXPECT_NEAR(sideband_amplitude(WaveformKind::Square, m, ratio), ref.real(), 1e-12)
          << "m=" << m << " ratio=" << ratio;
    }
  }
}

TEST(Sidebands, SineIsBessel) {
  for (int m = -6; m <= 6; ++m) EXPECT_EQ(sideband_amplitude(WaveformKind::Sine, m, 4.2), bessel_j(m, 4.2));
  EXPECT_NEAR(sideband_amplitude(WaveformKind::Sine, 0, 2.404826), 0.0, 1e-6);
  EXPECT_THROW(sideband_amplitude(WaveformKind::RampedSquare, 1, 1.0), InvalidArgument);
}

TEST(Sidebands, SquareExamples) {
  EXPECT_NEAR(sideband_amplitude(WaveformKind::Square, 0, 1e-6), 1.0, 1e-9);
  EXPECT_NEAR(std::abs(sideband_amplitude(WaveformKind::Square, 2, 2.0)), 0.5, 1e-15);
  EXPECT_NEAR(sideband_amplitude(WaveformKind::Square, 0, 2.0), 0.0, 1e-16);
  EXPECT_EQ(sideband_amplitude(WaveformKind::Square, 0, 0.0), 1.0);
  EXPECT_EQ(sideband_amplitude(WaveformKind::Square, 3, 0.0), 0.0);
}

TEST(Sidebands, EqualAmplitudeLaw) {
  for (int m = 1; m <= 10; ++m) {
    EXPECT_NEAR(std::abs(sideband_amplitude(WaveformKind::Square, m, m)), 0.5, 1e-9);
    EXPECT_NEAR(std::abs(sideband_amplitude(WaveformKind::Square, -m, m)), 0.5, 1e-9);
  }
}

TEST(Sidebands, ContinuityAcrossRemovableSingularity) {
  for (int m = 1; m <= 10; ++m) {
    const double at = sideband_amplitude(WaveformKind::Square, m, m);
    for (double eps : {1e-7, 1e-9, 1e-11}) {
      // slope in the ratio is 1/(4m) there
      EXPECT_NEAR(sideband_amplitude(WaveformKind::Square, m, m - eps), at - eps / (4.0 * m), 1e-14);
      EXPECT_NEAR(sideband_amplitude(WaveformKind::Square, m, m + eps), at + eps / (4.0 * m), 1e-14);
    }
  }
}

TEST(Sidebands, Parity) {
  for (int i = 0; i < 100; ++i) {
    const double ratio = uniform(0.0, 20.0);
    for (int m = 0; m <= 20; ++m) {
      const double sign = m % 2 ? -1.0 : 1.0;
      EXPECT_EQ(sideband_amplitude(WaveformKind::Square, -m, ratio),
                sign * sideband_amplitude(WaveformKind::Square, m, ratio));
      EXPECT_NEAR(sideband_amplitude(WaveformKind::Sine, -m, ratio),
                  sign * sideband_amplitude(WaveformKind::Sine, m, ratio), 1e-12);
    }
  }
  for (auto kind : {WaveformKind::Square, WaveformKind::Sine}) {
    EXPECT_NEAR(sideband_amplitude(kind, -3, 1.7), -sideband_amplitude(kind, 3, 1.7), 1e-15);
  }
}

TEST(Sidebands, MotionalAveragingLimit) {
  for (auto kind : {WaveformKind::Square, WaveformKind::Sine}) {
    for (int m : {1, 2, -3}) {
      double prev = 1.0;
      for (double ratio : {0.5, 0.1, 0.01, 1e-4, 1e-6}) {
        const double a = std::abs(sideband_amplitude(kind, m, ratio));
        EXPECT_LE(a, prev);
        prev = a;
      }
      EXPECT_LT(prev, 1e-6);
    }
    EXPECT_NEAR(sideband_amplitude(kind, 0, 1e-6), 1.0, 1e-9);
  }
}

TEST(SidebandSet, ZeroRatio) {
  for (auto kind : {WaveformKind::Square, WaveformKind::Sine}) {
    const SidebandSet sb = sideband_set(kind, 0.0, 5);
    EXPECT_EQ(sb.at(0), 1.0);
    for (int m = 1; m <= 5; ++m) {
      EXPECT_EQ(sb.at(m), 0.0);
      EXPECT_EQ(sb.at(-m), 0.0);
    }
    EXPECT_EQ(sb.parseval_defect, 0.0);
  }
}

TEST(SidebandSet, ParsevalAtFixedTruncation) {
  // square coefficients fall off as 1/m^2, so the tail beyond M = 40 still
  // carries about 5e-5 of the norm at ratio 5; the sine set converges
  // super-exponentially once M exceeds the ratio
  const SidebandSet sq = sideband_set(WaveformKind::Square, 5.0, 40);
  EXPECT_NEAR(sq.parseval_defect, 4.98e-5, 0.01e-5);
  const SidebandSet sn = sideband_set(WaveformKind::Sine, 5.0, 40);
  EXPECT_LE(sn.parseval_defect, 1e-6);
  EXPECT_GE(sn.parseval_defect, -1e-15);
  EXPECT_THROW(sideband_set(WaveformKind::Square, 5.0, 0), InvalidArgument);
}

TEST(SidebandSet, ParsevalDefectDecreasesWithTruncation) {
  for (auto kind : {WaveformKind::Square, WaveformKind::Sine}) {
    for (double ratio : {0.3, 2.0, 7.7, 15.0}) {
      double prev = 2.0;
      for (int mm = 1; mm <= 200; mm += 7) {
        const double d = sideband_set(kind, ratio, mm).parseval_defect;
        EXPECT_LE(d, prev + 1e-15);
        EXPECT_GE(d, -1e-14);
        prev = d;
      }
    }
  }
}

TEST(SidebandSet, AdaptiveTruncationMeetsTarget) {
  for (int i = 0; i < 50; ++i) {
    const double ratio = uniform(0.1, 20.0);
    for (auto kind : {WaveformKind::Square, WaveformKind::Sine}) {
      const SidebandSet sb = sideband_set(kind, ratio);
      EXPECT_LT(sb.parseval_defect, kParsevalTarget);
      EXPECT_LE(sb.m_max, kMaxSidebandOrder);
      // and it is the smallest such truncation
      if (sb.m_max > 1) {
        EXPECT_GE(sideband_set(kind, ratio, sb.m_max - 1).parseval_defect, kParsevalTarget);
      }
    }
  }
}

TEST(FftSidebands, MatchClosedForms) {
  ModulationWaveform w = testing::square(mhz(3.3 * 40), mhz(40));
  SidebandSet q = fft_sidebands(w, 10);
  for (int m = -5; m <= 5; ++m) EXPECT_NEAR(q.at(m), sideband_amplitude(WaveformKind::Square, m, 3.3), 1e-9);
  w = testing::sine(mhz(50), mhz(50));
  q = fft_sidebands(w, 10);
  EXPECT_NEAR(q.at(0), 0.7651976866, 1e-10);
  w.delta = 0.0;
  q = fft_sidebands(w, 3);
  EXPECT_NEAR(q.at(0), 1.0, 1e-14);
  EXPECT_NEAR(q.at(2), 0.0, 1e-14);
  ModulationWaveform ramped = testing::square(mhz(100), mhz(50));
  ramped.kind = WaveformKind::RampedSquare;
  EXPECT_THROW(fft_sidebands(ramped, 3), InvalidArgument);
  ModulationWaveform shifted = testing::square(mhz(100), mhz(50));
  shifted.phase = 0.3;
  EXPECT_THROW(fft_sidebands(shifted, 3), InvalidArgument);
}

TEST(RwaPopulation, SingleTermExample) {
  QubitParams q = testing::reference_qubit();
  q.g = mhz(10);  // g Delta = 10 MHz with Delta_0 = 1
  SidebandSet sb;
  sb.kind = WaveformKind::Square;
  sb.m_max = 0;
  sb.amps = {1.0};
  const double p = rwa_population(q, sb, mhz(50), 0.0);
  const double sat = (3.1 / 1.2) * 100.0;
  EXPECT_NEAR(p, 0.5 * sat / (3.1 * 3.1 + sat), 1e-14);
  EXPECT_NEAR(p, 0.482, 5e-4);
}

TEST(RwaPopulation, LimitsAndErrors) {
  QubitParams q = testing::reference_qubit();
  const SidebandSet sb = sideband_set(WaveformKind::Square, 2.0);
  // strong drive on a lone m = 2 sideband saturates at 1/2
  SidebandSet lone;
  lone.m_max = 2;
  lone.amps = {0.0, 0.0, 0.0, 0.0, 0.5};
  q.g = mhz(5000);
  const double omega = mhz(50);
  EXPECT_NEAR(rwa_population(q, lone, omega, -2 * omega), 0.5, 1e-4);
  // the sum is not capped: saturated neighbours at ratio 2 add up past 1
  EXPECT_GT(rwa_population(q, sideband_set(WaveformKind::Square, 2.0, 2), omega, -2 * omega), 1.0);
  q.g = 0.0;
  EXPECT_EQ(rwa_population(q, sb, omega, 0.3), 0.0);
  q.g = mhz(20);
  q.gamma1 = 0.0;
  EXPECT_THROW(rwa_population(q, sb, omega, 0.0), InvalidArgument);
}

TEST(RwaPopulation, BatchMatchesScalar) {
  const QubitParams q = testing::reference_qubit();
  const SidebandSet sb = sideband_set(WaveformKind::Sine, 3.1);
  std::vector<double> nu, out(301);
  for (int k = 0; k <= 300; ++k) nu.push_back(mhz(-300 + 2.0 * k));
  rwa_population(q, sb, mhz(32), nu, out);
  for (std::size_t k = 0; k < nu.size(); ++k) {
    EXPECT_NEAR(out[k], rwa_population(q, sb, mhz(32), nu[k]), 1e-14);
    EXPECT_LE(out[k], 1.0);
  }
}

TEST(RwaLinewidth, Examples) {
  const QubitParams q = testing::reference_qubit();
  EXPECT_NEAR(rwa_linewidth(q, 0.0), q.gamma2(), 1e-9);
  // g Delta = 10 MHz
  EXPECT_NEAR(rwa_linewidth(q, 0.5), mhz(std::sqrt(3.1 * 3.1 + 100.0 * 3.1 / 1.2)), 1e-6);
  QubitParams strong = q;
  strong.g = mhz(2000);
  EXPECT_NEAR(rwa_linewidth(strong, 0.5) / (strong.g * 0.5 * std::sqrt(3.1 / 1.2)), 1.0, 1e-4);
}

TEST(RwaSpectrum, GridMetadata) {
  const QubitParams q = testing::reference_qubit();
  SweepAxes axes;
  axes.nu = linspace(mhz(-300), mhz(300), 31);
  axes.y = {mhz(5), mhz(15), mhz(50)};
  const SpectrumGrid grid = rwa_spectrum(q, testing::square(mhz(100), mhz(50)), axes, 2);
  EXPECT_NO_THROW(grid.validate());
  EXPECT_EQ(grid.layer, SolverLayer::RWA);
  EXPECT_EQ(grid.meta["extrapolated_rows"].size(), 2u);
  EXPECT_EQ(grid.meta["sideband_orders"].size(), 3u);
  EXPECT_EQ(grid.meta["nan_cells"], 0);
  EXPECT_EQ(grid.meta["cells_above_one"], std::count_if(grid.values.begin(), grid.values.end(), [](double v) { return v > 1.0; }));
  const SidebandSet sb = sideband_set(WaveformKind::Square, 2.0);
  EXPECT_NEAR(grid.at(2, 7), rwa_population(q, sb, mhz(50), hz_to_angular(grid.x_axis[7])), 1e-14);
  EXPECT_THROW(rwa_spectrum(q, [] {
    ModulationWaveform w = testing::square(mhz(100), mhz(50));
    w.kind = WaveformKind::RampedSquare;
    return w;
  }(), axes), InvalidArgument);
}

}  // namespace
}  // namespace latchsim
