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

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "choiqpt/channels.h"
#include "choiqpt/numerics.h"

namespace choiqpt {

class CalibrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Device medians, used when a calibration file leaves a value out.
inline constexpr double kMedianCnotError = 8.690e-3;
inline constexpr double kMedianSxError = 2.860e-4;
inline constexpr double kDefaultSingleQubitDurationNs = 35.0;
inline constexpr double kDefaultCnotDurationNs = 300.0;

/// One qubit row of a device calibration, SI units.
struct QubitCalibration {
  std::size_t index = 0;
  double t1 = 0.0;             // s
  double t2 = 0.0;             // s
  double frequency = 0.0;      // Hz
  double anharmonicity = 0.0;  // Hz
  double readout_err = 0.0;
  double p_meas0_prep1 = 0.0;  // zeta
  double p_meas1_prep0 = 0.0;  // eta
  double readout_length = 0.0;  // s
  double sx_error = kMedianSxError;

  /// min(t2, 2 t1)
  double effective_t2() const { return std::min(t2, 2.0 * t1); }
};

struct CnotCalibration {
  std::size_t control = 0;
  std::size_t target = 0;
  double error = 0.0;
};

struct GateDurations {
  double single_qubit = kDefaultSingleQubitDurationNs * 1e-9;  // s
  double cnot = kDefaultCnotDurationNs * 1e-9;                 // s
};

struct DeviceCalibration {
  std::string name;
  std::vector<QubitCalibration> qubits;
  std::vector<CnotCalibration> cnots;
  GateDurations durations;

  const QubitCalibration& qubit(std::size_t index) const;
  /// Reported CNOT error for the pair in either direction, or the device
  /// median when the pair is absent.
  double cnot_error(std::size_t a, std::size_t b) const;
};

/// Parses the calibration JSON schema (times in us/ns, frequencies in GHz)
/// into SI units. Throws CalibrationError on missing fields or bad values.
DeviceCalibration parse_calibration(const nlohmann::json& j);
DeviceCalibration load_calibration(const std::string& path);

/// Amplitude damping followed by pure dephasing over `duration` seconds.
KrausSet damping_kraus(double t1, double t2, double duration);

/// E(rho) = (1-p) rho + p I/d on `num_qubits` qubits.
KrausSet depolarizing_kraus(double p, std::size_t num_qubits);

using ConfusionMatrix = Eigen::Matrix2d;

/// Column-stochastic readout matrix, columns indexed by the prepared bit:
/// [[1-eta, zeta], [eta, 1-zeta]].
ConfusionMatrix readout_confusion(const QubitCalibration& q);

struct GateKey {
  std::string name;
  std::vector<std::size_t> qubits;

  auto operator<=>(const GateKey&) const = default;
};

/// Noise acting on logical qubits 0..K-1 of a circuit. Gates without an
/// entry (RZ, Ph, and anything not in the device basis) run noiselessly.
struct NoiseModel {
  std::string id;
  std::size_t num_qubits = 0;
  std::map<GateKey, KrausSet> gate_noise;
  std::vector<ConfusionMatrix> readout_confusion;
  std::map<std::string, double> gate_durations;  // s
  std::vector<std::string> warnings;

  const KrausSet* find(const std::string& name,
                       const std::vector<std::size_t>& qubits) const;
};

/// Builds the noise seen by a circuit whose logical qubit i runs on physical
/// qubit layout[i]. Device gates SX and X get depolarizing(sx_error) after
/// T1/T2 damping; CNOT gets two-qubit depolarizing(cnot error) after damping
/// on both wires.
NoiseModel noise_model_from_calibration(const DeviceCalibration& calib,
                                        const std::vector<std::size_t>& layout);

}  // namespace choiqpt
