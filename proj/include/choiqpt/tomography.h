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
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "choiqpt/channels.h"
#include "choiqpt/gates.h"
#include "choiqpt/metrics.h"
#include "choiqpt/noise.h"
#include "choiqpt/simulator.h"

namespace choiqpt {

class TomographyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Single-qubit input states |0>, |1>, |+>, |+i>.
enum class PrepState { kZero, kOne, kPlus, kPlusI };

/// Product input state, qubit 0 first. Label form: "0,+i".
struct Preparation {
  std::vector<PrepState> qubits;

  std::string label() const;
  static Preparation parse(const std::string& label);
  /// Gates taking |0...0> to the state: X for |1>, H for |+>, H then
  /// Ph(pi/2) for |+i>.
  Circuit circuit() const;
  ComplexMatrix density() const;

  bool operator==(const Preparation&) const = default;
};

struct TomographyPlan {
  std::size_t num_qubits = 0;
  std::vector<Preparation> preparations;    // 4^K
  std::vector<MeasurementSetting> settings;  // 3^K
  std::uint64_t shots = 0;

  /// Jobs are ordered preparation-major: job = prep * settings + setting.
  std::size_t num_jobs() const { return preparations.size() * settings.size(); }
};

TomographyPlan build_plan(std::size_t num_qubits, std::uint64_t shots);

/// Rows Tr[(P_i^T (x) Xi_jb) B_n] for every job and outcome, against the
/// Hermitian operator basis B_n = W_a (x) W_c / d^2 (in (x) out Paulis).
RealMatrix design_matrix(const TomographyPlan& plan);
std::size_t design_rank(const TomographyPlan& plan);

struct JobRecord {
  Preparation prep;
  MeasurementSetting setting;
  CountsTable counts;                // sampled mode
  std::vector<double> probabilities;  // exact mode

  std::vector<double> frequencies(std::size_t num_qubits) const;
};

struct TomographyDataset {
  TomographyPlan plan;
  Circuit target;
  std::vector<JobRecord> jobs;  // plan order
  std::uint64_t seed = 0;
  bool exact = false;
  std::string noise_model_id;  // empty when noiseless
};

struct ExecutionOptions {
  /// Probabilities instead of sampled counts.
  bool exact = false;
  /// Rewrite target, preparation and measurement circuits into the device
  /// basis before simulating. Applies only with a noise model.
  bool lower_to_native = true;
  /// 0 picks std::thread::hardware_concurrency().
  std::size_t threads = 0;
};

/// Runs every job: preparation, target, basis rotation, simulation, then
/// sampling with seed derive_seed(seed, job) and the model's readout errors.
TomographyDataset execute_plan(const TomographyPlan& plan, const Circuit& target,
                               const NoiseModel* noise, std::uint64_t seed,
                               const ExecutionOptions& options = {});

/// Least-squares Choi estimate from the frequencies of a complete dataset.
/// Hermitian by construction, possibly not positive.
ChoiMatrix linear_inversion(const TomographyDataset& dataset);

struct ProjectionResult {
  ChoiMatrix choi;
  bool converged = false;
  std::size_t iterations = 0;
};

/// Nearest CPTP Choi matrix by Dykstra's alternating projections between
/// the PSD cone and the affine set Tr_out C = I. The final iterate is made
/// exactly trace preserving by congruence with (Tr_out C)^{-1/2} (x) I,
/// which keeps it positive.
ProjectionResult project_cptp(const ChoiMatrix& raw, double tol, std::size_t max_iter);

enum class ReconstructionMethod { kLinearInversion, kLinearInversionThenCptp };

struct ReconstructionOptions {
  ReconstructionMethod method = ReconstructionMethod::kLinearInversionThenCptp;
  double cptp_tol = 1e-10;
  std::size_t max_iter = 20000;
};

struct QptResult {
  ChoiMatrix raw;
  ChoiMatrix choi;
  ChoiMatrix ideal;
  FidelityReport report;
  TomographyDataset dataset;
  ReconstructionMethod method = ReconstructionMethod::kLinearInversionThenCptp;
  bool converged = true;
  std::size_t iterations = 0;
};

QptResult reconstruct(const TomographyDataset& dataset,
                      const ReconstructionOptions& options = {});

/// build_plan -> execute_plan -> linear_inversion -> optional projection,
/// scored against choi_from_unitary(circuit_unitary(target)).
QptResult qpt(const Circuit& target, const NoiseModel* noise, std::uint64_t shots,
              std::uint64_t seed, const ReconstructionOptions& options = {},
              const ExecutionOptions& execution = {});

nlohmann::json to_json(const TomographyDataset& d);
TomographyDataset dataset_from_json(const nlohmann::json& j);
/// {fidelity, average_gate_fidelity, tp_dev, min_eig, shots, seed, ...}
nlohmann::json report_json(const QptResult& r);

}  // namespace choiqpt
