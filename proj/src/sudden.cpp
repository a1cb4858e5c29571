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

#include "latchsim/sudden.hpp"

#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "latchsim/common.hpp"
#include "latchsim/linalg.hpp"

namespace latchsim {
namespace {

constexpr int kMaxDoublings = 20;

// H in the (g, e) basis for total detuning x = nu + f.
Eigen::Matrix2cd latch_h(double x, double g) {
  Eigen::Matrix2cd h;
  h << -0.5 * x, 0.5 * g, 0.5 * g, 0.5 * x;
  return h;
}

double evolve(const QubitParams& q, double f0, double f1, double t_ramp, int steps, const Eigen::Vector2cd& start,
              const Eigen::Vector2cd& target) {
  const double nu = q.nu();
  const double h = t_ramp / steps;
  const double c1 = 0.5 - std::sqrt(3.0) / 6.0;
  const double c2 = 0.5 + std::sqrt(3.0) / 6.0;
  const cplx i(0.0, 1.0);
  auto f_at = [&](double t) { return f0 + (f1 - f0) * t / t_ramp; };
  Eigen::Vector2cd psi = start;
  for (int k = 0; k < steps; ++k) {
    const double t = k * h;
    const Eigen::Matrix2cd h1 = latch_h(nu + f_at(t + c1 * h), q.g);
    const Eigen::Matrix2cd h2 = latch_h(nu + f_at(t + c2 * h), q.g);
    const Eigen::Matrix2cd comm = h2 * h1 - h1 * h2;
    const Eigen::Matrix2cd heff = 0.5 * (h1 + h2) - i * (std::sqrt(3.0) / 12.0) * h * comm;
    psi = unitary_2x2(heff, h) * psi;
  }
  return std::norm(target.dot(psi));
}

}  // namespace

void RampSpec::validate() const {
  if (!(t_ramp >= 0.0) || !std::isfinite(t_ramp)) throw InvalidArgument("ramp: t_ramp must be finite and >= 0");
}

double sudden_error(const QubitParams& q, double delta, const RampSpec& ramp) {
  ramp.validate();
  const double x = ramp.side == RampSide::RightStart ? q.nu() + delta : q.nu() - delta;
  const double g2 = q.g * q.g;
  if (g2 == 0.0) return 0.0;
  return sudden_error_max(delta, ramp.t_ramp) * g2 / (g2 + x * x);
}

double sudden_error_max(double delta, double t_ramp) {
  const double a = t_ramp * delta;
  return 0.25 * a * a;
}

double ramp_transition_oracle(const QubitParams& q, double delta, const RampSpec& ramp, double tol) {
  ramp.validate();
  if (!(ramp.t_ramp > 0.0)) throw InvalidArgument("ramp_transition_oracle: t_ramp must be > 0");
  const bool right = ramp.side == RampSide::RightStart;
  const double x = right ? q.nu() + delta : q.nu() - delta;
  const double theta = std::atan2(q.g, x);
  const double s = std::sin(0.5 * theta);
  const double c = std::cos(0.5 * theta);
  const Eigen::Vector2cd plus(s, c);
  const Eigen::Vector2cd minus(c, -s);
  const double f0 = right ? -delta : delta;
  const double f1 = -f0;

  int steps = 16;
  double prev = evolve(q, f0, f1, ramp.t_ramp, steps, minus, plus);
  double diff = 0.0;
  for (int d = 0; d < kMaxDoublings; ++d) {
    steps *= 2;
    const double cur = evolve(q, f0, f1, ramp.t_ramp, steps, minus, plus);
    diff = std::abs(cur - prev);
    if (diff <= tol) return cur;
    prev = cur;
  }
  throw ConvergenceError("ramp_transition_oracle: step doubling did not converge", diff);
}

}  // namespace latchsim
