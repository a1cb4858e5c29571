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

#pragma once

#include <complex>

#include <Eigen/Dense>

namespace latchsim {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Dense matrix exponential by scaling and squaring with a diagonal Pade
/// approximant of degree 3, 5, 7, 9 or 13 selected from the 1-norm
/// (Higham, SIAM J. Matrix Anal. Appl. 26, 2005). Intended for the small
/// dense generators used here (dimension <= ~100).
CMatrix expm(const CMatrix& a);

/// 2x2 propagator exp(-i H t) for a Hermitian H, in closed form.
Eigen::Matrix2cd unitary_2x2(const Eigen::Matrix2cd& h, double t);

/// Largest absolute entry.
double max_abs(const CMatrix& a);

}  // namespace latchsim
