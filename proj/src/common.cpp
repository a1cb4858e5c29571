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
#include <cstdlib>
#include <string>
#include <thread>

#include "latchsim/common.hpp"
#include "latchsim/parallel.hpp"
#include "latchsim/qubit.hpp"

namespace latchsim {

std::string_view version() { return LATCHSIM_VERSION; }

double thermal_occupation(double omega, double t_bath) {
  if (t_bath <= 0.0 || omega <= 0.0) return 0.0;
  return 1.0 / std::expm1(kHbarOverKb * omega / t_bath);
}

void QubitParams::validate() const {
  if (!(g >= 0.0)) throw InvalidArgument("qubit: g must be >= 0");
  if (!(gamma1 >= 0.0)) throw InvalidArgument("qubit: gamma1 must be >= 0");
  if (!(gamma_phi >= 0.0)) throw InvalidArgument("qubit: gamma_phi must be >= 0");
  if (!(t_bath >= 0.0)) throw InvalidArgument("qubit: t_bath must be >= 0");
  if (!std::isfinite(omega0) || !std::isfinite(omega)) throw InvalidArgument("qubit: frequencies must be finite");
}

unsigned resolve_thread_count(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("LATCHSIM_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace latchsim
