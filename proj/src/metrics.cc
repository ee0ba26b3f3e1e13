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

#include "choiqpt/metrics.h"

#include <algorithm>
#include <cmath>

namespace choiqpt {
namespace {

constexpr double kPsdClipTol = 1e-7;
constexpr double kRankOneTol = 1e-9;

void require_psd(const ComplexMatrix& m, const char* what) {
  if (eig_hermitian(m).values.back() < -kPsdClipTol) {
    throw std::invalid_argument(std::string(what) + " is not positive semidefinite");
  }
}

}  // namespace

ProcessFidelity process_fidelity(const ChoiMatrix& measured, const ChoiMatrix& ideal) {
  if (measured.matrix.rows() != ideal.matrix.rows() ||
      measured.matrix.cols() != ideal.matrix.cols()) {
    throw DimensionError("process_fidelity: Choi matrices differ in size");
  }
  const ComplexMatrix meas = measured.normalized();
  const HermitianEigen e = eig_hermitian(ideal.normalized());
  const bool pure = e.values.size() < 2 || std::abs(e.values[1]) < kRankOneTol;
  if (!pure) {
    return {state_fidelity(meas, ideal.normalized()), false};
  }
  const ComplexVector phi = e.vectors.col(0);
  return {(phi.adjoint() * meas * phi)(0, 0).real(), true};
}

double state_fidelity(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) {
    throw DimensionError("state_fidelity: dimension mismatch");
  }
  require_psd(rho, "state_fidelity: rho");
  require_psd(sigma, "state_fidelity: sigma");
  const ComplexMatrix root = hermitian_function(rho, [](double x) {
    return std::sqrt(std::max(x, 0.0));
  });
  const HermitianEigen inner = eig_hermitian(root * sigma * root);
  double tr = 0.0;
  for (double v : inner.values) tr += std::sqrt(std::max(v, 0.0));
  return tr * tr;
}

double average_gate_fidelity(double process_fidelity, std::size_t dim) {
  const double d = static_cast<double>(dim);
  return (d * process_fidelity + 1.0) / (d + 1.0);
}

FidelityReport fidelity_report(const ChoiMatrix& measured, const ChoiMatrix& ideal) {
  FidelityReport r;
  const ProcessFidelity f = process_fidelity(measured, ideal);
  r.process_fidelity = std::clamp(f.value, 0.0, 1.0);
  r.ideal_is_pure = f.ideal_is_pure;
  r.average_gate_fidelity = average_gate_fidelity(r.process_fidelity, measured.dim_in);
  const CptpReport cptp = is_cptp(measured, kPsdTol);
  r.tp_deviation = cptp.tp_dev;
  r.min_eigenvalue = cptp.min_eig;
  return r;
}

nlohmann::json to_json(const FidelityReport& r) {
  return nlohmann::json{{"process_fidelity", r.process_fidelity},
                        {"average_gate_fidelity", r.average_gate_fidelity},
                        {"tp_deviation", r.tp_deviation},
                        {"min_eigenvalue", r.min_eigenvalue},
                        {"ideal_is_pure", r.ideal_is_pure}};
}

}  // namespace choiqpt
