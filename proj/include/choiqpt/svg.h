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

#include <string>
#include <vector>

#include "choiqpt/numerics.h"
#include "choiqpt/simulator.h"

namespace choiqpt {

/// Hinton diagram: square side ~ sqrt(|v| / max|v|), filled when positive,
/// outlined when negative. Row and column labels are required.
std::string hinton_svg(const RealMatrix& m, const std::vector<std::string>& labels,
                       const std::string& title);

/// City plot, one oblique 3-D bar per entry.
std::string city_svg(const RealMatrix& m, const std::vector<std::string>& labels,
                     const std::string& title);

/// Bar chart of outcome frequencies, every bitstring shown.
std::string counts_svg(const CountsTable& counts, std::size_t num_qubits,
                       const std::string& title);

/// "0000" .. "1111" style labels for a 2^n basis.
std::vector<std::string> basis_labels(std::size_t num_qubits);

/// Escapes &, <, >, " for text nodes and attributes.
std::string xml_escape(const std::string& s);

}  // namespace choiqpt
