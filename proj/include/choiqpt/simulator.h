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
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "choiqpt/gates.h"
#include "choiqpt/noise.h"
#include "choiqpt/numerics.h"

namespace choiqpt {

class SimulationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct DensityMatrix {
  ComplexMatrix matrix;

  DensityMatrix() = default;
  explicit DensityMatrix(ComplexMatrix m) : matrix(std::move(m)) {}

  /// |index><index| on num_qubits qubits.
  static DensityMatrix basis_state(std::size_t index, std::size_t num_qubits);
  static DensityMatrix from_ket(const ComplexVector& ket);

  std::size_t dim() const { return static_cast<std::size_t>(matrix.rows()); }
  std::size_t num_qubits() const;
  /// Throws SimulationError unless Hermitian, unit trace and PSD.
  void validate(double tol = 1e-8) const;
};

/// Per-qubit Pauli labels, qubit 0 first, e.g. "XZ".
struct MeasurementSetting {
  std::string bases;

  static MeasurementSetting parse(const std::string& labels);
  std::size_t num_qubits() const { return bases.size(); }
  /// Rotation taking each basis to Z: H for X, Ph(-pi/2) then H for Y.
  Circuit rotation() const;
  /// Projector onto outcome `bits` (qubit 0 is the most significant bit).
  ComplexMatrix projector(std::size_t bits) const;

  bool operator==(const MeasurementSetting&) const = default;
};

/// Histogram of outcome bitstrings; zero-count outcomes are not stored.
struct CountsTable {
  std::uint64_t shots = 0;
  std::map<std::string, std::uint64_t> counts;

  std::uint64_t count(const std::string& bits) const;
  /// counts / shots over all 2^K outcomes in index order.
  std::vector<double> frequencies(std::size_t num_qubits) const;

  bool operator==(const CountsTable&) const = default;
};

std::string bitstring(std::size_t index, std::size_t num_qubits);

/// Runs the circuit on `initial`: each gate's unitary, then the gate's noise
/// channel when a model is given and has an entry for it.
DensityMatrix simulate(const Circuit& c, const NoiseModel* noise,
                       const DensityMatrix& initial);

std::vector<double> measure_probabilities(const DensityMatrix& rho,
                                          const MeasurementSetting& setting);

/// Observed-outcome distribution after independent per-qubit readout errors.
std::vector<double> apply_confusion(const std::vector<double>& probs,
                                    const std::vector<ConfusionMatrix>& confusion);

/// Multinomial draw of `shots` outcomes. The generator is std::mt19937_64
/// seeded with `seed`; each draw maps the top 53 bits of one output to a
/// uniform in [0, 1) and inverts the cumulative distribution. With confusion
/// matrices, every shot then flips qubit q's bit using one more uniform per
/// qubit in order q = 0..K-1.
CountsTable sample_counts(const std::vector<double>& probs, std::uint64_t shots,
                          std::uint64_t seed,
                          const std::vector<ConfusionMatrix>* confusion = nullptr);

/// splitmix64 finalizer of base + (job + 1) * golden-ratio increment.
struct ExecutionResult {
  std::vector<double> probabilities;  // readout error included
  CountsTable counts;
};

/// Runs c from |0...0> and measures every qubit in Z. With a noise model the
/// circuit is lowered to native gates first and readout error is sampled.
ExecutionResult execute_circuit(const Circuit& c, const NoiseModel* noise,
                                std::uint64_t shots, std::uint64_t seed);

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t job);

nlohmann::json to_json(const CountsTable& c);
CountsTable counts_from_json(const nlohmann::json& j);

}  // namespace choiqpt
