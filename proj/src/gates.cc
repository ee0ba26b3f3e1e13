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

#include "choiqpt/gates.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <numbers>

namespace choiqpt {
namespace {

using std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

const std::vector<GateInfo> kLibrary = {
    {GateKind::kX, "X", 1, 0},           {GateKind::kSX, "SX", 1, 0},
    {GateKind::kH, "H", 1, 0},           {GateKind::kRZ, "RZ", 1, 1},
    {GateKind::kRX, "RX", 1, 1},         {GateKind::kPh, "Ph", 1, 1},
    {GateKind::kCNOT, "CNOT", 2, 0},     {GateKind::kCZ, "CZ", 2, 0},
    {GateKind::kSWAP, "SWAP", 2, 0},     {GateKind::kSqrtSwap, "SQRT_SWAP", 2, 0},
    {GateKind::kSqrtCZ, "SQRT_CZ", 2, 0}, {GateKind::kSQSCZ, "SQSCZ", 2, 0},
};

ComplexMatrix two_qubit(std::initializer_list<std::initializer_list<Complex>> rows) {
  ComplexMatrix m(4, 4);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (const auto& v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

bool is_native(GateKind k) {
  return k == GateKind::kRZ || k == GateKind::kSX || k == GateKind::kX ||
         k == GateKind::kCNOT;
}

// Controlled phase diag(1,1,1,e^{i lambda}) with two CNOTs.
void append_controlled_phase(Circuit& c, double lambda, std::size_t a,
                             std::size_t b) {
  c.add("Ph", {a}, {lambda / 2});
  c.add("CNOT", {a, b});
  c.add("Ph", {b}, {-lambda / 2});
  c.add("CNOT", {a, b});
  c.add("Ph", {b}, {lambda / 2});
}

void append_sqscz(Circuit& c, std::size_t a, std::size_t b) {
  for (const auto& g : sqscz_decomposition().gates) {
    std::vector<std::size_t> q;
    for (std::size_t w : g.qubits) q.push_back(w == 0 ? a : b);
    c.add(g.name, std::move(q), g.params);
  }
}

}  // namespace

const std::vector<GateInfo>& gate_library() { return kLibrary; }

const GateInfo& gate_info(std::string_view name) {
  for (const auto& info : kLibrary) {
    if (info.name == name) return info;
  }
  throw GateError("unknown gate '" + std::string(name) + "'");
}

Circuit& Circuit::add(std::string name, std::vector<std::size_t> qubits,
                      std::vector<double> params) {
  GateApplication g{std::move(name), std::move(params), std::move(qubits)};
  const GateInfo& info = gate_info(g.name);
  if (g.params.size() != info.num_params) {
    throw GateError("gate " + g.name + " takes " +
                    std::to_string(info.num_params) + " parameter(s), got " +
                    std::to_string(g.params.size()));
  }
  if (g.qubits.size() != info.num_qubits) {
    throw GateError("gate " + g.name + " acts on " +
                    std::to_string(info.num_qubits) + " qubit(s), got " +
                    std::to_string(g.qubits.size()));
  }
  for (std::size_t i = 0; i < g.qubits.size(); ++i) {
    if (g.qubits[i] >= num_qubits) {
      throw GateError("gate " + g.name + ": qubit " +
                      std::to_string(g.qubits[i]) + " outside width " +
                      std::to_string(num_qubits));
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (g.qubits[i] == g.qubits[j]) {
        throw GateError("gate " + g.name + ": repeated qubit index");
      }
    }
  }
  gates.push_back(std::move(g));
  return *this;
}

Circuit& Circuit::append(const Circuit& other) {
  if (other.num_qubits > num_qubits) {
    throw GateError("append: circuit is wider than the target");
  }
  for (const auto& g : other.gates) add(g.name, g.qubits, g.params);
  return *this;
}

std::size_t Circuit::count(std::string_view name) const {
  return static_cast<std::size_t>(std::count_if(
      gates.begin(), gates.end(),
      [&](const GateApplication& g) { return g.name == name; }));
}

void Circuit::validate() const {
  Circuit copy(num_qubits);
  for (const auto& g : gates) copy.add(g.name, g.qubits, g.params);
}

ComplexMatrix gate_unitary(std::string_view name,
                           const std::vector<double>& params) {
  const GateInfo& info = gate_info(name);
  if (params.size() != info.num_params) {
    throw GateError("gate " + std::string(name) + " takes " +
                    std::to_string(info.num_params) + " parameter(s), got " +
                    std::to_string(params.size()));
  }
  const Complex a{0.5, 0.5};   // (1+i)/2
  const Complex b{0.5, -0.5};  // (1-i)/2
  ComplexMatrix m(2, 2);
  switch (info.kind) {
    case GateKind::kX:
      m << 0, 1, 1, 0;
      return m;
    case GateKind::kSX:
      m << a, b, b, a;
      return m;
    case GateKind::kH:
      m << 1, 1, 1, -1;
      return m / std::sqrt(2.0);
    case GateKind::kRZ:
      m << std::exp(-kI * params[0] / 2.0), 0, 0, std::exp(kI * params[0] / 2.0);
      return m;
    case GateKind::kRX: {
      const double c = std::cos(params[0] / 2), s = std::sin(params[0] / 2);
      m << c, -kI * s, -kI * s, c;
      return m;
    }
    case GateKind::kPh:
      m << 1, 0, 0, std::exp(kI * params[0]);
      return m;
    case GateKind::kCNOT:
      return two_qubit({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}});
    case GateKind::kCZ:
      return two_qubit({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, -1}});
    case GateKind::kSWAP:
      return two_qubit({{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}});
    case GateKind::kSqrtSwap:
      return two_qubit({{1, 0, 0, 0}, {0, a, b, 0}, {0, b, a, 0}, {0, 0, 0, 1}});
    case GateKind::kSqrtCZ:
      return two_qubit({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, kI}});
    case GateKind::kSQSCZ:
      return two_qubit({{1, 0, 0, 0}, {0, a, b, 0}, {0, b, a, 0}, {0, 0, 0, kI}});
  }
  throw GateError("unhandled gate kind");
}

ComplexMatrix embed_operator(const ComplexMatrix& op,
                             const std::vector<std::size_t>& qubits,
                             std::size_t num_qubits) {
  const std::size_t k = qubits.size();
  if (op.rows() != (Eigen::Index{1} << k) || op.cols() != op.rows()) {
    throw DimensionError("embed_operator: operator size does not match qubit count");
  }
  for (std::size_t q : qubits) {
    if (q >= num_qubits) throw DimensionError("embed_operator: qubit out of range");
  }
  const std::size_t dim = std::size_t{1} << num_qubits;
  std::size_t mask = 0;
  for (std::size_t q : qubits) mask |= std::size_t{1} << (num_qubits - 1 - q);
  auto local_index = [&](std::size_t full) {
    std::size_t idx = 0;
    for (std::size_t q : qubits) {
      idx = (idx << 1) | ((full >> (num_qubits - 1 - q)) & 1U);
    }
    return static_cast<Eigen::Index>(idx);
  };
  ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim),
                                          static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      if ((i & ~mask) != (j & ~mask)) continue;
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          op(local_index(i), local_index(j));
    }
  }
  return out;
}

ComplexMatrix circuit_unitary(const Circuit& c) {
  c.validate();
  ComplexMatrix u = identity(std::size_t{1} << c.num_qubits);
  for (const auto& g : c.gates) {
    u = embed_operator(gate_unitary(g.name, g.params), g.qubits, c.num_qubits) * u;
  }
  return u;
}

PhaseMatch equal_up_to_global_phase(const ComplexMatrix& u,
                                    const ComplexMatrix& v, double tol) {
  if (u.rows() != v.rows() || u.cols() != v.cols()) {
    throw DimensionError("equal_up_to_global_phase: shape mismatch");
  }
  PhaseMatch r;
  const Complex overlap = (v.adjoint() * u).trace();
  r.phase = std::abs(overlap) > 0 ? std::arg(overlap) : 0.0;
  r.deviation = max_abs_diff(u, std::exp(kI * r.phase) * v);
  r.equal = r.deviation < tol;
  return r;
}

// SQSCZ = e^{i pi/4} exp(-i pi/8 (XX + YY)) (RZ(pi/4) x RZ(pi/4)). The XX+YY
// term is CNOT (RX(pi/4) x RZ(pi/4)) CNOT conjugated by RX(pi/2) on both
// wires, which turns the ZZ generator into YY.
Circuit sqscz_decomposition() {
  Circuit c(2);
  for (std::size_t q : {0, 1}) {  // RX(-pi/2)
    c.add("RZ", {q}, {pi}).add("SX", {q}).add("RZ", {q}, {pi});
  }
  c.add("CNOT", {0, 1});
  // RX(pi/4) on the control
  c.add("RZ", {0}, {pi / 2})
      .add("SX", {0})
      .add("RZ", {0}, {pi / 4 + pi})
      .add("SX", {0})
      .add("RZ", {0}, {pi / 2});
  c.add("RZ", {1}, {pi / 4});
  c.add("CNOT", {0, 1});
  for (std::size_t q : {0, 1}) c.add("SX", {q}).add("RZ", {q}, {pi / 4});
  return c;
}

// [RX(-pi/2) Ph(pi) x RZ(-pi/2)] SQSCZ [I x Ph(pi/2) X] SQSCZ [X H x RX(pi/2)],
// rightmost factor first.
Circuit cnot_from_sqscz() {
  Circuit c(2);
  c.add("H", {0}).add("X", {0}).add("RX", {1}, {pi / 2});
  c.add("SQSCZ", {0, 1});
  c.add("X", {1}).add("Ph", {1}, {pi / 2});
  c.add("SQSCZ", {0, 1});
  c.add("Ph", {0}, {pi}).add("RX", {0}, {-pi / 2}).add("RZ", {1}, {-pi / 2});
  return c;
}

Circuit single_qubit_to_native(const ComplexMatrix& u, std::size_t qubit,
                               std::size_t num_qubits) {
  if (u.rows() != 2 || u.cols() != 2) {
    throw DimensionError("single_qubit_to_native: expected a 2x2 unitary");
  }
  // ZYZ angles of u / sqrt(det u) = [[a, -b*], [b, a*]].
  const Complex root = std::sqrt(u.determinant());
  const Complex a = u(0, 0) / root;
  const Complex b = u(1, 0) / root;
  const double theta = 2.0 * std::atan2(std::abs(b), std::abs(a));
  const double sum = std::abs(a) > 1e-12 ? -2.0 * std::arg(a) : 0.0;   // phi + lambda
  const double diff = std::abs(b) > 1e-12 ? 2.0 * std::arg(b) : 0.0;   // phi - lambda
  const double phi = (sum + diff) / 2, lambda = (sum - diff) / 2;

  constexpr double kAngleTol = 1e-12;
  Circuit c(num_qubits);
  if (std::abs(theta) < kAngleTol) {
    c.add("RZ", {qubit}, {phi + lambda});
  } else if (std::abs(theta - pi / 2) < kAngleTol) {
    c.add("RZ", {qubit}, {lambda - pi / 2})
        .add("SX", {qubit})
        .add("RZ", {qubit}, {phi + pi / 2});
  } else {
    c.add("RZ", {qubit}, {lambda})
        .add("SX", {qubit})
        .add("RZ", {qubit}, {theta + pi})
        .add("SX", {qubit})
        .add("RZ", {qubit}, {phi + pi});
  }
  return c;
}

Circuit lower_to_native(const Circuit& c) {
  c.validate();
  Circuit out(c.num_qubits);
  for (const auto& g : c.gates) {
    const GateInfo& info = gate_info(g.name);
    if (is_native(info.kind)) {
      out.add(g.name, g.qubits, g.params);
      continue;
    }
    if (info.kind == GateKind::kPh) {
      out.add("RZ", g.qubits, g.params);
      continue;
    }
    if (info.num_qubits == 1) {
      out.append(single_qubit_to_native(gate_unitary(g.name, g.params),
                                        g.qubits[0], c.num_qubits));
      continue;
    }
    const std::size_t a = g.qubits[0], b = g.qubits[1];
    Circuit expanded(c.num_qubits);
    switch (info.kind) {
      case GateKind::kCZ:
        expanded.add("H", {b}).add("CNOT", {a, b}).add("H", {b});
        break;
      case GateKind::kSWAP:
        expanded.add("CNOT", {a, b}).add("CNOT", {b, a}).add("CNOT", {a, b});
        break;
      case GateKind::kSqrtCZ:
        append_controlled_phase(expanded, pi / 2, a, b);
        break;
      case GateKind::kSQSCZ:
        append_sqscz(expanded, a, b);
        break;
      case GateKind::kSqrtSwap:
        // sqrt(SWAP) = SQSCZ * sqrt(CZ)^dagger; the factors commute.
        append_controlled_phase(expanded, -pi / 2, a, b);
        append_sqscz(expanded, a, b);
        break;
      default:
        throw GateError("lower_to_native: no rule for " + g.name);
    }
    out.append(lower_to_native(expanded));
  }
  return out;
}

void to_json(nlohmann::json& j, const GateApplication& g) {
  j = nlohmann::json{{"name", g.name}, {"params", g.params}, {"qubits", g.qubits}};
}

void from_json(const nlohmann::json& j, GateApplication& g) {
  j.at("name").get_to(g.name);
  g.params = j.value("params", std::vector<double>{});
  j.at("qubits").get_to(g.qubits);
}

void to_json(nlohmann::json& j, const Circuit& c) {
  j = nlohmann::json{{"num_qubits", c.num_qubits}, {"gates", c.gates}};
}

void from_json(const nlohmann::json& j, Circuit& c) {
  Circuit parsed(j.at("num_qubits").get<std::size_t>());
  for (const auto& g : j.at("gates").get<std::vector<GateApplication>>()) {
    parsed.add(g.name, g.qubits, g.params);
  }
  c = std::move(parsed);
}

Circuit load_circuit(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open circuit file " + path);
  return nlohmann::json::parse(in).get<Circuit>();
}

}  // namespace choiqpt
