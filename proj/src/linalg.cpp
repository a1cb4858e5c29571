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

#include "latchsim/linalg.hpp"

#include <array>
#include <cmath>

namespace latchsim {
namespace {

constexpr std::array<double, 14> kPade13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};

// Low-degree approximants: {theta_m, coefficients b_0..b_m}.
struct LowPade {
  int degree;
  double theta;
  std::array<double, 10> b;
};

constexpr std::array<LowPade, 4> kLowPade = {{
    {3, 1.495585217958292e-2, {120.0, 60.0, 12.0, 1.0}},
    {5, 2.539398330063230e-1, {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0}},
    {7, 9.504178996162932e-1, {17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0}},
    {9, 2.097847961257068e0,
     {17643225600.0, 8821612800.0, 2075673600.0, 302702400.0, 30270240.0, 2162160.0, 110880.0, 3960.0, 90.0,
      1.0}},
}};

constexpr double kTheta13 = 5.371920351148152e0;

double one_norm(const CMatrix& a) { return a.cwiseAbs().colwise().sum().maxCoeff(); }

CMatrix solve_pade(const CMatrix& u, const CMatrix& v) {
  return (v - u).partialPivLu().solve(v + u);
}

}  // namespace

CMatrix expm(const CMatrix& a) {
  const Eigen::Index n = a.rows();
  if (n == 0) return a;
  const CMatrix ident = CMatrix::Identity(n, n);
  const double norm = one_norm(a);

  for (const auto& p : kLowPade) {
    if (norm <= p.theta) {
      const CMatrix a2 = a * a;
      CMatrix even_pow = ident;
      CMatrix u_poly = p.b[1] * ident;
      CMatrix v = p.b[0] * ident;
      for (int k = 2; k <= p.degree; k += 2) {
        even_pow = even_pow * a2;
        v += p.b[k] * even_pow;
        u_poly += p.b[k + 1] * even_pow;
      }
      return solve_pade(a * u_poly, v);
    }
  }

  int s = 0;
  if (norm > kTheta13) s = static_cast<int>(std::ceil(std::log2(norm / kTheta13)));
  const CMatrix as = a / std::ldexp(1.0, s);
  const CMatrix a2 = as * as;
  const CMatrix a4 = a2 * a2;
  const CMatrix a6 = a4 * a2;
  const auto& b = kPade13;
  const CMatrix u_inner = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 + b[3] * a2 +
                          b[1] * ident;
  const CMatrix u = as * u_inner;
  const CMatrix v =
      a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident;
  CMatrix x = solve_pade(u, v);
  for (int i = 0; i < s; ++i) x = x * x;
  return x;
}

Eigen::Matrix2cd unitary_2x2(const Eigen::Matrix2cd& h, double t) {
  // H = h0 I + bx X + by Y + bz Z
  const cplx h0 = 0.5 * (h(0, 0) + h(1, 1));
  const double bz = 0.5 * (h(0, 0) - h(1, 1)).real();
  const double bx = h(0, 1).real();
  const double by = -h(0, 1).imag();
  const double b = std::sqrt(bx * bx + by * by + bz * bz);
  const cplx phase = std::exp(cplx(0.0, -1.0) * h0 * t);
  const double c = std::cos(b * t);
  // sin(bt)/b, finite at b = 0
  const double sinc = b * t == 0.0 ? t : std::sin(b * t) / b;
  const cplx mi(0.0, -1.0);
  Eigen::Matrix2cd u;
  u(0, 0) = c + mi * sinc * bz;
  u(1, 1) = c - mi * sinc * bz;
  u(0, 1) = mi * sinc * cplx(bx, -by);
  u(1, 0) = mi * sinc * cplx(bx, by);
  return phase * u;
}

double max_abs(const CMatrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

}  // namespace latchsim
