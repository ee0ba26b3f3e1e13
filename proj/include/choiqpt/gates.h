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

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "choiqpt/numerics.h"

namespace choiqpt {

class GateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class GateKind {
  kX,
  kSX,
  kH,
  kRZ,
  kRX,
  kPh,
  kCNOT,
  kCZ,
  kSWAP,
  kSqrtSwap,
  kSqrtCZ,
  kSQSCZ,
};

struct GateInfo {
  GateKind kind;
  std::string_view name;
  std::size_t num_qubits;
  std::size_t num_params;
};

/// Library lookup by name ("X", "SX", "H", "RZ", "RX", "Ph", "CNOT", "CZ",
/// "SWAP", "SQRT_SWAP", "SQRT_CZ", "SQSCZ"). Throws GateError if unknown.
const GateInfo& gate_info(std::string_view name);
const std::vector<GateInfo>& gate_library();

struct GateApplication {
  std::string name;
  std::vector<double> params;
  std::vector<std::size_t> qubits;

  bool operator==(const GateApplication&) const = default;
};

struct Circuit {
  std::size_t num_qubits = 0;
  std::vector<GateApplication> gates;

  Circuit() = default;
  explicit Circuit(std::size_t n) : num_qubits(n) {}

  /// Appends a gate after validating name, arity and qubit indices.
  Circuit& add(std::string name, std::vector<std::size_t> qubits,
               std::vector<double> params = {});
  Circuit& append(const Circuit& other);

  std::size_t count(std::string_view name) const;
  void validate() const;

  bool operator==(const Circuit&) const = default;
};

/// Unitary of a library gate, dimension 2^arity, qubit 0 most significant.
ComplexMatrix gate_unitary(std::string_view name,
                           const std::vector<double>& params = {});

/// Embeds a k-qubit operator acting on `qubits` into an n-qubit register.
/// qubits[0] is the most significant wire of `op`.
ComplexMatrix embed_operator(const ComplexMatrix& op,
                             const std::vector<std::size_t>& qubits,
                             std::size_t num_qubits);

/// Product of the embedded gate unitaries; the first gate acts first.
ComplexMatrix circuit_unitary(const Circuit& c);

struct PhaseMatch {
  bool equal = false;
  double phase = 0.0;      // u ~ e^{i phase} v
  double deviation = 0.0;  // max |u - e^{i phase} v|
};

/// Compares u and v up to the global phase arg Tr(v^dagger u).
PhaseMatch equal_up_to_global_phase(const ComplexMatrix& u,
                                    const ComplexMatrix& v, double tol);

/// Two-CNOT realization of SQSCZ over {RZ, SX, CNOT}.
Circuit sqscz_decomposition();

/// CNOT(0 -> 1) built from two SQSCZ gates and single-qubit gates.
Circuit cnot_from_sqscz();

/// Rewrites a circuit over the device basis {RZ, SX, X, CNOT}; the result
/// equals the input up to global phase.
Circuit lower_to_native(const Circuit& c);

/// Single-qubit unitary as RZ/SX gates on `qubit` (at most two SX).
Circuit single_qubit_to_native(const ComplexMatrix& u, std::size_t qubit,
                               std::size_t num_qubits);

void to_json(nlohmann::json& j, const GateApplication& g);
void from_json(const nlohmann::json& j, GateApplication& g);
void to_json(nlohmann::json& j, const Circuit& c);
void from_json(const nlohmann::json& j, Circuit& c);

Circuit load_circuit(const std::string& path);

}  // namespace choiqpt
