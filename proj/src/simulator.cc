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

#include "choiqpt/simulator.h"

#include <cmath>
#include <numbers>
#include <random>

namespace choiqpt {
namespace {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t log2_exact(std::size_t n) {
  std::size_t k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  if ((std::size_t{1} << k) != n) {
    throw SimulationError("dimension " + std::to_string(n) + " is not a power of two");
  }
  return k;
}

}  // namespace

DensityMatrix DensityMatrix::basis_state(std::size_t index, std::size_t num_qubits) {
  const std::size_t d = std::size_t{1} << num_qubits;
  if (index >= d) throw SimulationError("basis_state: index out of range");
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(d),
                                        static_cast<Eigen::Index>(d));
  m(static_cast<Eigen::Index>(index), static_cast<Eigen::Index>(index)) = 1.0;
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::from_ket(const ComplexVector& ket) {
  const double n2 = ket.squaredNorm();
  if (n2 <= 0) throw SimulationError("from_ket: zero vector");
  return DensityMatrix(ket * ket.adjoint() / n2);
}

std::size_t DensityMatrix::num_qubits() const { return log2_exact(dim()); }

void DensityMatrix::validate(double tol) const {
  require_square(matrix, "DensityMatrix");
  if (!all_finite(matrix)) throw SimulationError("density matrix has non-finite entries");
  if (hermitian_deviation(matrix) > tol) {
    throw SimulationError("density matrix is not Hermitian");
  }
  if (std::abs(matrix.trace() - Complex(1.0)) > tol) {
    throw SimulationError("density matrix trace is not 1");
  }
  if (eig_hermitian(matrix).values.back() < -tol) {
    throw SimulationError("density matrix is not positive semidefinite");
  }
}

MeasurementSetting MeasurementSetting::parse(const std::string& labels) {
  if (labels.empty()) throw SimulationError("measurement setting is empty");
  for (char c : labels) {
    if (c != 'X' && c != 'Y' && c != 'Z') {
      throw SimulationError("measurement setting '" + labels + "' uses a label outside {X,Y,Z}");
    }
  }
  return MeasurementSetting{labels};
}

Circuit MeasurementSetting::rotation() const {
  Circuit c(num_qubits());
  for (std::size_t q = 0; q < bases.size(); ++q) {
    if (bases[q] == 'X') {
      c.add("H", {q});
    } else if (bases[q] == 'Y') {
      c.add("Ph", {q}, {-std::numbers::pi / 2}).add("H", {q});
    }
  }
  return c;
}

ComplexMatrix MeasurementSetting::projector(std::size_t bits) const {
  const ComplexMatrix r = circuit_unitary(rotation());
  const ComplexVector ket = r.adjoint().col(static_cast<Eigen::Index>(bits));
  return ket * ket.adjoint();
}

std::uint64_t CountsTable::count(const std::string& bits) const {
  const auto it = counts.find(bits);
  return it == counts.end() ? 0 : it->second;
}

std::vector<double> CountsTable::frequencies(std::size_t num_qubits) const {
  const std::size_t d = std::size_t{1} << num_qubits;
  std::vector<double> f(d, 0.0);
  if (shots == 0) return f;
  for (std::size_t i = 0; i < d; ++i) {
    f[i] = static_cast<double>(count(bitstring(i, num_qubits))) / static_cast<double>(shots);
  }
  return f;
}

std::string bitstring(std::size_t index, std::size_t num_qubits) {
  std::string s(num_qubits, '0');
  for (std::size_t q = 0; q < num_qubits; ++q) {
    if ((index >> (num_qubits - 1 - q)) & 1U) s[q] = '1';
  }
  return s;
}

DensityMatrix simulate(const Circuit& c, const NoiseModel* noise,
                       const DensityMatrix& initial) {
  c.validate();
  if (initial.dim() != (std::size_t{1} << c.num_qubits) ||
      initial.matrix.cols() != initial.matrix.rows()) {
    throw SimulationError("simulate: circuit width " + std::to_string(c.num_qubits) +
                          " does not match state dimension " + std::to_string(initial.dim()));
  }
  if (noise != nullptr && noise->num_qubits != c.num_qubits) {
    throw SimulationError("simulate: noise model covers " + std::to_string(noise->num_qubits) +
                          " qubits, circuit has " + std::to_string(c.num_qubits));
  }
  ComplexMatrix rho = initial.matrix;
  for (const auto& g : c.gates) {
    const ComplexMatrix u = embed_operator(gate_unitary(g.name, g.params), g.qubits, c.num_qubits);
    rho = u * rho * u.adjoint();
    if (noise == nullptr) continue;
    if (const KrausSet* k = noise->find(g.name, g.qubits)) {
      ComplexMatrix next = ComplexMatrix::Zero(rho.rows(), rho.cols());
      for (const auto& op : k->operators) {
        const ComplexMatrix full = embed_operator(op, g.qubits, c.num_qubits);
        next += full * rho * full.adjoint();
      }
      rho = std::move(next);
    }
  }
  return DensityMatrix(hermitian_part(rho));
}

std::vector<double> measure_probabilities(const DensityMatrix& rho,
                                          const MeasurementSetting& setting) {
  if (rho.dim() != (std::size_t{1} << setting.num_qubits())) {
    throw SimulationError("measure_probabilities: setting width does not match state");
  }
  const DensityMatrix rotated = simulate(setting.rotation(), nullptr, rho);
  std::vector<double> p(rho.dim());
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] = rotated.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real();
  }
  return p;
}

std::vector<double> apply_confusion(const std::vector<double>& probs,
                                    const std::vector<ConfusionMatrix>& confusion) {
  const std::size_t k = confusion.size();
  if (probs.size() != (std::size_t{1} << k)) {
    throw SimulationError("apply_confusion: one confusion matrix per qubit required");
  }
  std::vector<double> out(probs.size(), 0.0);
  for (std::size_t truth = 0; truth < probs.size(); ++truth) {
    for (std::size_t seen = 0; seen < probs.size(); ++seen) {
      double w = probs[truth];
      for (std::size_t q = 0; q < k; ++q) {
        const int t = static_cast<int>((truth >> (k - 1 - q)) & 1U);
        const int s = static_cast<int>((seen >> (k - 1 - q)) & 1U);
        w *= confusion[q](s, t);
      }
      out[seen] += w;
    }
  }
  return out;
}

CountsTable sample_counts(const std::vector<double>& probs, std::uint64_t shots,
                          std::uint64_t seed,
                          const std::vector<ConfusionMatrix>* confusion) {
  if (shots == 0) throw SimulationError("shots > 0 required");
  const std::size_t k = log2_exact(probs.size());
  double total = 0.0;
  std::vector<double> cdf(probs.size());
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] < -1e-8 || !std::isfinite(probs[i])) {
      throw SimulationError("sample_counts: invalid probability " + std::to_string(probs[i]));
    }
    total += std::max(probs[i], 0.0);
    cdf[i] = total;
  }
  if (std::abs(total - 1.0) > 1e-8) {
    throw SimulationError("sample_counts: probabilities sum to " + std::to_string(total));
  }
  if (confusion != nullptr && confusion->size() != k) {
    throw SimulationError("sample_counts: one confusion matrix per qubit required");
  }

  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> tally(probs.size(), 0);
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = uniform01(rng) * total;
    // cdf is monotone, so counting passed edges is the inverse CDF
    std::size_t outcome = 0;
    for (std::size_t i = 0; i + 1 < cdf.size(); ++i) outcome += u >= cdf[i] ? 1U : 0U;
    if (confusion != nullptr) {
      for (std::size_t q = 0; q < k; ++q) {
        const std::size_t shift = k - 1 - q;
        const auto bit = static_cast<Eigen::Index>((outcome >> shift) & 1U);
        const double flip = (*confusion)[q](1 - bit, bit);
        if (uniform01(rng) < flip) outcome ^= std::size_t{1} << shift;
      }
    }
    ++tally[outcome];
  }

  CountsTable table;
  table.shots = shots;
  for (std::size_t i = 0; i < tally.size(); ++i) {
    if (tally[i] > 0) table.counts[bitstring(i, k)] = tally[i];
  }
  return table;
}

ExecutionResult execute_circuit(const Circuit& c, const NoiseModel* noise,
                                std::uint64_t shots, std::uint64_t seed) {
  const Circuit run = noise != nullptr ? lower_to_native(c) : c;
  const DensityMatrix rho = simulate(run, noise, DensityMatrix::basis_state(0, c.num_qubits));
  const std::vector<double> p =
      measure_probabilities(rho, MeasurementSetting::parse(std::string(c.num_qubits, 'Z')));
  const std::vector<ConfusionMatrix>* confusion =
      noise != nullptr && !noise->readout_confusion.empty() ? &noise->readout_confusion : nullptr;
  ExecutionResult r;
  r.probabilities = confusion != nullptr ? apply_confusion(p, *confusion) : p;
  r.counts = sample_counts(p, shots, seed, confusion);
  return r;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t job) {
  std::uint64_t z = base + (job + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

nlohmann::json to_json(const CountsTable& c) {
  nlohmann::json counts = nlohmann::json::object();
  for (const auto& [bits, n] : c.counts) counts[bits] = n;
  return nlohmann::json{{"shots", c.shots}, {"counts", std::move(counts)}};
}

CountsTable counts_from_json(const nlohmann::json& j) {
  CountsTable c;
  j.at("shots").get_to(c.shots);
  std::uint64_t sum = 0;
  for (const auto& [bits, n] : j.at("counts").items()) {
    c.counts[bits] = n.get<std::uint64_t>();
    sum += c.counts[bits];
  }
  if (sum != c.shots) throw SimulationError("counts do not sum to shots");
  return c;
}

}  // namespace choiqpt
