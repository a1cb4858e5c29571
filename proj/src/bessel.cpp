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
#include <string>
#include <vector>

#include "latchsim/common.hpp"
#include "latchsim/rwa.hpp"

namespace latchsim {
namespace {

constexpr double kSeriesLimit = 2.0;
constexpr double kRescaleAbove = 1e250;

double ascending_series(int m, double x) {
  // sum_k (-1)^k (x/2)^(2k+m) / (k! (k+m)!)
  const double half = 0.5 * x;
  double term = 1.0;
  for (int k = 1; k <= m; ++k) term *= half / k;
  if (term == 0.0) return 0.0;
  const double q = -half * half;
  double sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<double>(k) * (k + m));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

int miller_start(int n, double x) {
  const int top = std::max(n, static_cast<int>(std::ceil(x)));
  const int start = top + static_cast<int>(std::sqrt(400.0 * top)) + 20;
  return start + (start % 2);
}

}  // namespace

std::vector<double> bessel_j_sequence(int n, double x) {
  if (n < 0) throw InvalidArgument("bessel_j_sequence: order must be >= 0");
  if (!(x >= 0.0) || !std::isfinite(x)) throw InvalidArgument("bessel_j_sequence: argument must be finite and >= 0");
  std::vector<double> out(static_cast<std::size_t>(n) + 1, 0.0);
  if (x == 0.0) {
    out[0] = 1.0;
    return out;
  }
  if (x <= kSeriesLimit) {
    for (int m = 0; m <= n; ++m) out[m] = ascending_series(m, x);
    return out;
  }
  // Miller: recur downward from an arbitrary seed, then normalize with
  // J_0 + 2 sum_k J_2k = 1.
  const int start = miller_start(n, x);
  double next = 0.0;
  double cur = 1e-300;
  double norm = 0.0;
  for (int k = start; k >= 1; --k) {
    const double prev = 2.0 * k / x * cur - next;
    next = cur;
    cur = prev;
    // cur is now the unnormalized J_{k-1}
    if (k - 1 <= n) out[k - 1] = cur;
    if ((k - 1) % 2 == 0) norm += (k - 1 == 0 ? 1.0 : 2.0) * cur;
    if (std::abs(cur) > kRescaleAbove) {
      const double s = 1.0 / kRescaleAbove;
      cur *= s;
      next *= s;
      norm *= s;
      for (int j = k - 1; j <= n; ++j) out[j] *= s;
    }
  }
  for (double& v : out) v /= norm;
  return out;
}

double bessel_j(int m, double x) {
  const int order = std::abs(m);
  double v = 0.0;
  if (x <= kSeriesLimit) {
    if (!(x >= 0.0)) throw InvalidArgument("bessel_j: argument must be >= 0");
    v = x == 0.0 ? (order == 0 ? 1.0 : 0.0) : ascending_series(order, x);
  } else {
    v = bessel_j_sequence(order, x)[order];
  }
  return (m < 0 && order % 2 == 1) ? -v : v;
}

}  // namespace latchsim
