// Copyright 2026 The choiqpt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "json.hpp"

#include "choiqpt/channels.h"
#include "choiqpt/numerics.h"

namespace choiqpt {

struct ProcessFidelity {
  double value = 0.0;
  /// False when the ideal channel was not unitary and the Uhlmann fidelity
  /// of the normalized Choi states was used instead of the overlap.
  bool ideal_is_pure = true;
};

/// Entanglement fidelity <phi| C_meas / Tr C_meas |phi>, where |phi> is the
/// ideal's normalized Choi vector.
ProcessFidelity process_fidelity(const ChoiMatrix& measured, const ChoiMatrix& ideal);

/// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double state_fidelity(const ComplexMatrix& rho, const ComplexMatrix& sigma);

/// (d F_P + 1) / (d + 1)
double average_gate_fidelity(double process_fidelity, std::size_t dim);

struct FidelityReport {
  double process_fidelity = 0.0;  // clipped to [0, 1]
  double average_gate_fidelity = 0.0;
  double tp_deviation = 0.0;
  double min_eigenvalue = 0.0;
  bool ideal_is_pure = true;
};

FidelityReport fidelity_report(const ChoiMatrix& measured, const ChoiMatrix& ideal);

nlohmann::json to_json(const FidelityReport& r);

}  // namespace choiqpt
