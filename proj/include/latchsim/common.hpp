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

#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

namespace latchsim {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// hbar / k_B in kelvin-seconds.
inline constexpr double kHbarOverKb = 7.638232577577646e-12;

// All frequencies inside the library are angular (rad/s). Config files and
// exported tables use ordinary frequencies in Hz.
constexpr double hz_to_angular(double hz) { return kTwoPi * hz; }
constexpr double angular_to_hz(double w) { return w / kTwoPi; }

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on user-supplied parameters does not hold.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The avoided crossing is closed (g = 0) inside the latching range, so the
/// latch eigenbases are undefined.
class DegenerateCrossing : public Error {
 public:
  using Error::Error;
};

/// An iterative routine did not reach its tolerance. `defect` holds the last
/// achieved error estimate.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double defect)
      : Error(what + " (achieved defect " + std::to_string(defect) + ")"), defect_(defect) {}
  double defect() const noexcept { return defect_; }

 private:
  double defect_;
};

/// Library version string.
std::string_view version();

/// Bose-Einstein occupation of a mode at angular frequency `omega` (rad/s) for
/// bath temperature `t_bath` (K). Returns 0 for a cold bath.
double thermal_occupation(double omega, double t_bath);

}  // namespace latchsim
